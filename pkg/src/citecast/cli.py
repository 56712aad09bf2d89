"""Command-line surface for the analysis pipeline.

Commands: ingest, describe, fit, suite, bootstrap, diagnose, predict,
synth.  A JSON config file can preset any flag (flags win); every output
directory receives a manifest.json echoing the seed, configuration, tool
version, baseline provenance, and all analysis conventions.

Exit codes: 0 success, 1 validation or configuration failure, 2 numerical
failure (the offending model is named in the message).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import corpus as corpus_mod
from . import diagnostics, ols, reports, stats, suite, synth
from .design import DUMMY_PREFIX, ModelSpec, build_matrix, dummy_name
from .errors import (
    CitecastError,
    NestingViolationError,
    NonFiniteError,
    UnderdeterminedError,
)
from .suite import SuiteFitError

_NUMERICAL_ERRORS = (UnderdeterminedError, NonFiniteError,
                     NestingViolationError, SuiteFitError)


def _parse_stars(text: str):
    values = tuple(float(v) for v in text.split(","))
    if len(values) != 3 or not all(0 < v < 1 for v in values):
        raise argparse.ArgumentTypeError(
            "star thresholds must be three probabilities, e.g. 0.01,0.05,0.1"
        )
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citecast",
        description="Long-term citation-impact forecasting pipeline",
    )
    parser.add_argument("--config", type=Path, default=None,
                        help="JSON file presetting any flag; flags win")
    sub = parser.add_subparsers(dest="command", required=True)
    parser.subparser_map = {}
    _add_parser = sub.add_parser

    def add_parser(name, **kwargs):
        p = _add_parser(name, **kwargs)
        parser.subparser_map[name] = p
        return p

    sub.add_parser = add_parser

    def add_corpus_opts(p, baselines=True):
        p.add_argument("--corpus", type=Path, required=True)
        p.add_argument("--format", choices=("csv", "jsonl"), default=None,
                       help="corpus file format (default: by suffix)")
        if baselines:
            p.add_argument("--baselines", type=Path, default=None,
                           help="external baseline table CSV; default: "
                                "compute from the corpus")

    def add_model_opts(p):
        p.add_argument("--family", choices=suite.FAMILIES, required=True)
        p.add_argument("--window", type=int, required=True,
                       help="citation window t in 0..6")
        p.add_argument("--baseline-sc", default=None,
                       help="SC excluded from dummies (default: first code)")
        p.add_argument("--no-intercept", action="store_true")

    def add_out(p):
        p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("ingest", help="validate a corpus and emit its manifest")
    add_corpus_opts(p, baselines=False)
    add_out(p)

    p = sub.add_parser("describe",
                       help="descriptive statistics, HHI, correlation matrices")
    add_corpus_opts(p)
    p.add_argument("--correlation-scale", choices=("raw", "log"), default="raw")
    add_out(p)

    p = sub.add_parser("fit", help="fit one model specification")
    add_corpus_opts(p)
    add_model_opts(p)
    p.add_argument("--stars", type=_parse_stars, default=(0.01, 0.05, 0.1),
                   help="significance star thresholds, e.g. 0.01,0.05,0.1")
    add_out(p)

    p = sub.add_parser("suite",
                       help="21 fits, 14 ANOVA comparisons, SC-dummy summaries")
    add_corpus_opts(p)
    p.add_argument("--baseline-sc", default=None)
    p.add_argument("--no-intercept", action="store_true")
    p.add_argument("--anova", choices=suite.ANOVA_VARIANTS, default="as_printed")
    p.add_argument("--stars", type=_parse_stars, default=(0.01, 0.05, 0.1))
    p.add_argument("--workers", type=int, default=1)
    add_out(p)

    p = sub.add_parser("bootstrap", help="case bootstrap of one fit")
    add_corpus_opts(p)
    add_model_opts(p)
    p.add_argument("--resamples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    add_out(p)

    p = sub.add_parser("diagnose",
                       help="residual histogram/KDE and normal Q-Q points")
    add_corpus_opts(p)
    add_model_opts(p)
    p.add_argument("--bins", type=int, default=None)
    add_out(p)

    p = sub.add_parser("predict", help="score a feature file with a saved fit")
    p.add_argument("--fit", type=Path, required=True, help="fit JSON file")
    p.add_argument("--features", type=Path, required=True,
                   help="CSV of feature values; an sc_codes column expands "
                        "to SC dummies")
    add_out(p)

    p = sub.add_parser("synth",
                       help="generate a synthetic corpus and calibration report")
    p.add_argument("--generator-config", type=Path, default=None,
                   help="GeneratorConfig JSON file")
    p.add_argument("--records", type=int, default=None)
    p.add_argument("--scs", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--corpus-format", choices=("csv", "jsonl"), default="csv")
    add_out(p)

    return parser


def _scan_config_path(argv):
    for i, token in enumerate(argv):
        if token == "--config":
            if i + 1 >= len(argv):
                return None
            return Path(argv[i + 1])
        if token.startswith("--config="):
            return Path(token.split("=", 1)[1])
    return None


def _apply_config_file(parser, argv):
    """Pre-scan --config and inject file values as parser defaults."""
    config_path = _scan_config_path(argv)
    if config_path is None:
        return argv
    with config_path.open(encoding="utf-8") as handle:
        values = json.load(handle)
    flat = {k.replace("-", "_"): v for k, v in values.items()}
    path_keys = ("corpus", "baselines", "out", "fit", "features",
                 "generator_config")
    for subparser in parser.subparser_map.values():
        keys = {action.dest for action in subparser._actions}
        overlap = {k: v for k, v in flat.items() if k in keys}
        if not overlap:
            continue
        subparser.set_defaults(**{
            k: Path(v) if k in path_keys and v is not None
            else tuple(v) if k == "stars" else v
            for k, v in overlap.items()
        })
        # a value from the config satisfies a required flag
        for action in subparser._actions:
            if action.dest in overlap and action.required:
                action.required = False
    return argv


def _prepare(args):
    """Load corpus, resolve baselines, and compute normalized measures."""
    corpus = corpus_mod.load_corpus(args.corpus, format=args.format)
    if getattr(args, "baselines", None) is not None:
        baselines = stats.load_baselines(args.baselines)
    else:
        baselines = stats.compute_baselines(corpus)
    measures = stats.compute_measures(corpus, baselines)
    return corpus, baselines, measures


def _resolve_baseline_sc(args, corpus) -> str:
    if getattr(args, "baseline_sc", None):
        return args.baseline_sc
    return sorted(corpus.sc_universe)[0]


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _echo(args) -> dict:
    skip = {"command", "config", "func"}
    return {
        k: (str(v) if isinstance(v, Path) else list(v) if isinstance(v, tuple) else v)
        for k, v in vars(args).items() if k not in skip
    }


def cmd_ingest(args) -> int:
    corpus = corpus_mod.load_corpus(args.corpus, format=args.format)
    manifest = corpus_mod.corpus_manifest(corpus)
    out = _outdir(args)
    reports.write_sc_counts_csv(manifest.per_sc_counts, out / "sc_counts.csv")
    reports.write_manifest(
        out, "ingest", config_echo=_echo(args),
        decisions=reports.decisions_manifest(),
        extra={"corpus_summary": {
            "record_count": manifest.record_count,
            "sc_count": manifest.sc_count,
            "year_min": manifest.year_min,
            "year_max": manifest.year_max,
        }},
    )
    print(f"ingested {manifest.record_count} records across "
          f"{manifest.sc_count} SCs -> {out}")
    return 0


def cmd_describe(args) -> int:
    corpus, baselines, measures = _prepare(args)
    out = _outdir(args)
    rows = stats.descriptive_table(corpus, measures)
    reports.write_descriptive_csv(rows, out / "descriptive.csv")
    matrices = stats.correlation_matrices(corpus, measures,
                                          scale=args.correlation_scale)
    reports.write_correlation_matrices(matrices, out)
    concentration = stats.hhi(corpus)
    reports.write_manifest(
        out, "describe", config_echo=_echo(args),
        baseline_provenance=baselines.provenance,
        decisions=reports.decisions_manifest(
            correlation_scale=args.correlation_scale),
        extra={"hhi": concentration},
    )
    print(f"described {len(corpus)} records (hhi={concentration:.6f}) -> {out}")
    return 0


def _fit_from_args(args, corpus, measures):
    spec = ModelSpec(
        family=args.family,
        window=args.window,
        baseline_sc=_resolve_baseline_sc(args, corpus),
        include_intercept=not args.no_intercept,
    )
    return spec, build_matrix(corpus, measures, spec)


def cmd_fit(args) -> int:
    corpus, baselines, measures = _prepare(args)
    spec, matrix = _fit_from_args(args, corpus, measures)
    result = ols.fit(matrix)
    out = _outdir(args)
    reports.write_fit_json(result, out / "fit.json")
    reports.write_fit_csv(result, out / "fit.csv", args.stars)
    reports.write_manifest(
        out, "fit", config_echo=_echo(args),
        baseline_provenance=baselines.provenance,
        decisions=reports.decisions_manifest(
            include_intercept=spec.include_intercept,
            star_thresholds=args.stars),
    )
    print(f"fit {spec.family} t={spec.window}: adjusted_r2="
          f"{result.adjusted_r2:.6f} -> {out}")
    return 0


def cmd_suite(args) -> int:
    corpus, baselines, measures = _prepare(args)
    baseline_sc = _resolve_baseline_sc(args, corpus)
    result = suite.run_suite(
        corpus, measures, baseline_sc,
        include_intercept=not args.no_intercept,
        workers=args.workers,
        anova_variant=args.anova,
    )
    out = _outdir(args)
    reports.write_suite_report(result, out, args.stars)
    reports.write_manifest(
        out, "suite", config_echo=_echo(args),
        baseline_provenance=baselines.provenance,
        decisions=reports.decisions_manifest(
            include_intercept=not args.no_intercept,
            star_thresholds=args.stars,
            anova_variant=args.anova),
        extra={"baseline_sc": baseline_sc},
    )
    print(f"suite: {len(result.fits)} fits, {len(result.comparisons)} "
          f"comparisons -> {out}")
    return 0


def cmd_bootstrap(args) -> int:
    corpus, baselines, measures = _prepare(args)
    spec, matrix = _fit_from_args(args, corpus, measures)
    report = diagnostics.bootstrap(matrix, args.resamples, args.seed,
                                   workers=args.workers)
    out = _outdir(args)
    reports.write_bootstrap_csv(report, out / "bootstrap.csv")
    reports.write_manifest(
        out, "bootstrap", seed=args.seed, config_echo=_echo(args),
        baseline_provenance=baselines.provenance,
        decisions=reports.decisions_manifest(
            include_intercept=spec.include_intercept),
        extra={"resamples": report.resamples, "retries": report.retries},
    )
    print(f"bootstrap {report.resamples} resamples "
          f"({report.retries} retries) -> {out}")
    return 0


def cmd_diagnose(args) -> int:
    corpus, baselines, measures = _prepare(args)
    spec, matrix = _fit_from_args(args, corpus, measures)
    result = ols.fit(matrix)
    histogram = diagnostics.residual_histogram(result.residuals, args.bins)
    points = diagnostics.qq_points(result.residuals)
    out = _outdir(args)
    reports.write_histogram_csv(histogram, out / "residual_hist.csv")
    reports.write_qq_csv(points, out / "qq.csv")
    reports.write_manifest(
        out, "diagnose", config_echo=_echo(args),
        baseline_provenance=baselines.provenance,
        decisions=reports.decisions_manifest(
            include_intercept=spec.include_intercept),
    )
    print(f"diagnose {spec.family} t={spec.window}: {len(points)} residuals -> {out}")
    return 0


def _expand_feature_row(row: dict, fit_result) -> dict:
    features = {k: float(v) for k, v in row.items() if k != "sc_codes" and v != ""}
    if "sc_codes" in row:
        baseline_sc = fit_result.spec.baseline_sc if fit_result.spec else None
        for code in (c for c in row["sc_codes"].split(";") if c):
            if code == baseline_sc:
                continue
            name = dummy_name(code)
            if name in fit_result.column_order:
                features[name] = 1.0
            elif name not in fit_result.aliased:
                raise CitecastError(
                    f"feature row names unknown SC {code!r} for this fit"
                )
        for name in fit_result.column_order:
            if name.startswith(DUMMY_PREFIX) and name not in features:
                features[name] = 0.0
    return features


def cmd_predict(args) -> int:
    fit_result = reports.read_fit_json(args.fit)
    predictions = []
    with Path(args.features).open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise CitecastError("feature file is empty")
        for row in reader:
            features = _expand_feature_row(row, fit_result)
            predictions.append(ols.predict(fit_result, features))
    out = _outdir(args)
    reports.write_predictions_csv(predictions, out / "predictions.csv")
    reports.write_manifest(
        out, "predict", config_echo=_echo(args),
        decisions=reports.decisions_manifest(),
        extra={"rows_scored": len(predictions)},
    )
    print(f"scored {len(predictions)} rows -> {out}")
    return 0


def cmd_synth(args) -> int:
    if args.generator_config is not None:
        config = synth.load_config(args.generator_config)
    else:
        config = synth.GeneratorConfig()
    overrides = {}
    if args.records is not None:
        overrides["n_records"] = args.records
    if args.scs is not None:
        overrides["n_scs"] = args.scs
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        config = replace(config, **overrides)

    corpus = synth.generate(config)
    out = _outdir(args)
    corpus_name = f"corpus.{args.corpus_format}"
    corpus_mod.write_corpus(corpus, out / corpus_name, format=args.corpus_format)
    report = synth.calibration_report(corpus, config)
    reports.write_calibration_csv(report, out / "calibration_report.csv")
    if config.ground_truth is not None:
        # recovery runs normalize against unit baselines
        stats.write_baselines(stats.BaselineTable.uniform(corpus),
                              out / "baselines.csv")
    reports.write_manifest(
        out, "synth", seed=config.seed,
        config_echo=synth.config_to_dict(config),
        decisions=reports.decisions_manifest(),
        extra={"calibration_pass_fraction": report.pass_fraction},
    )
    failed = [r for r in report.rows if not r.passed]
    print(f"generated {len(corpus)} records -> {out} "
          f"(calibration {len(report.rows) - len(failed)}/{len(report.rows)})")
    if failed:
        for row in failed:
            print(f"  calibration FAIL {row.variable} {row.metric}: "
                  f"target {row.target} achieved {row.achieved:.4f}")
        return 1
    return 0


_COMMANDS = {
    "ingest": cmd_ingest,
    "describe": cmd_describe,
    "fit": cmd_fit,
    "suite": cmd_suite,
    "bootstrap": cmd_bootstrap,
    "diagnose": cmd_diagnose,
    "predict": cmd_predict,
    "synth": cmd_synth,
}


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except CitecastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

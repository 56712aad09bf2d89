"""File emission for analysis outputs.

Every file is deterministic: reals print with fixed 6-decimal formatting
(falling back to scientific notation rather than rounding a nonzero value
to bare zero), counts print as integers, missing cells are empty, and
manifests carry no timestamps.  Plot-shaped outputs are CSV data files,
not images.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from . import __version__
from .diagnostics import BootstrapReport, Histogram
from .ols import FitResult, stars
from .stats import CorrelationMatrices, DescriptiveRow
from .suite import SuiteResult
from .synth import CalibrationReport


def fmt_real(x: float) -> str:
    """Fixed 6-decimal formatting; nonzero values too small for it switch
    to scientific notation instead of printing as zero."""
    if isinstance(x, float) and math.isnan(x):
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = f"{x:.6f}"
    if x != 0.0 and float(text) == 0.0:
        return f"{x:.3e}"
    return text


def write_manifest(outdir: Path, command: str, *, seed=None, config_echo=None,
                   baseline_provenance=None, decisions=None, extra=None) -> None:
    payload = {
        "tool": "citecast",
        "version": __version__,
        "command": command,
        "seed": seed,
        "config": config_echo or {},
        "baseline_provenance": baseline_provenance,
        "decisions": decisions or {},
    }
    if extra:
        payload.update(extra)
    path = Path(outdir) / "manifest.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def decisions_manifest(*, include_intercept: bool = True,
                       correlation_scale: str = "raw",
                       star_thresholds=(0.01, 0.05, 0.1),
                       anova_variant: str = "as_printed") -> dict:
    """Every documented analysis convention, echoed in output manifests."""
    return {
        "multi_sc_denominator": "mean_of_member_sc_baselines",
        "std_dev": "sample_n_minus_1",
        "single_record_std": "zero_with_degenerate_flag",
        "correlation": {"kind": "pearson", "scale": correlation_scale},
        "baseline_fallback": "computed_from_corpus_when_no_external_file",
        "include_intercept": include_intercept,
        "sc_dummy_encoding": "multi_hot",
        "column_order": "substantive_then_sorted_sc_dummies",
        "empty_dummy_columns": "dropped_and_reported_aliased",
        "adjusted_r2": "one_minus_(1-r2)(n-1)/(n-p-1)",
        "back_transform": "pow10_minus_1_floor_0",
        "star_thresholds": list(star_thresholds),
        "alias_pivot_tol": 1e-10,
        "quartiles": "linear_interpolation_type7",
        "anova_denominator_df": anova_variant,
        "comparisons": "full_vs_each_restricted_at_matching_window",
    }


def _open_writer(path: Path):
    handle = path.open("w", newline="", encoding="utf-8")
    return handle, csv.writer(handle)


def write_descriptive_csv(rows: list[DescriptiveRow], path) -> None:
    handle, writer = _open_writer(Path(path))
    with handle:
        writer.writerow(["variable", "mean", "std_dev", "min", "max", "degenerate"])
        for row in rows:
            writer.writerow([
                row.variable, fmt_real(row.mean), fmt_real(row.std_dev),
                fmt_real(row.minimum), fmt_real(row.maximum),
                int(row.degenerate),
            ])


def write_correlation_csv(matrix, path) -> None:
    handle, writer = _open_writer(Path(path))
    with handle:
        writer.writerow([""] + list(matrix.labels))
        for label, row in zip(matrix.labels, matrix.values):
            writer.writerow([label] + [fmt_real(v) for v in row])


def write_correlation_matrices(matrices: CorrelationMatrices, outdir) -> list[str]:
    outdir = Path(outdir)
    names = []
    for name, matrix in (("correlation_impact.csv", matrices.impact),
                         ("correlation_readership.csv", matrices.readership),
                         ("correlation_cross.csv", matrices.cross)):
        write_correlation_csv(matrix, outdir / name)
        names.append(name)
    return names


def write_sc_counts_csv(per_sc_counts: dict[str, int], path) -> None:
    handle, writer = _open_writer(Path(path))
    with handle:
        writer.writerow(["sc", "count"])
        for sc in sorted(per_sc_counts):
            writer.writerow([sc, per_sc_counts[sc]])


def write_fit_csv(fit: FitResult, path, star_thresholds=(0.01, 0.05, 0.1)) -> None:
    """Coefficient table followed by a diagnostics footer block."""
    handle, writer = _open_writer(Path(path))
    with handle:
        writer.writerow(["variable", "estimate", "std_error", "t_value",
                         "p_value", "stars"])
        for name in fit.column_order:
            writer.writerow([
                name,
                fmt_real(fit.coefficients[name]),
                fmt_real(fit.std_errors[name]),
                fmt_real(fit.t_values[name]),
                fmt_real(fit.p_values[name]),
                stars(fit.p_values[name], star_thresholds),
            ])
        writer.writerow([])
        writer.writerow(["adjusted_r2", "f_statistic", "p_value_f", "rse",
                         "dof", "n", "aliased"])
        writer.writerow([
            fmt_real(fit.adjusted_r2), fmt_real(fit.f_statistic),
            fmt_real(fit.p_value_f), fmt_real(fit.rse),
            fit.dof, fit.n, ";".join(fit.aliased),
        ])


def write_fit_json(fit: FitResult, path) -> None:
    Path(path).write_text(
        json.dumps(fit.to_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def read_fit_json(path) -> FitResult:
    with Path(path).open(encoding="utf-8") as handle:
        return FitResult.from_dict(json.load(handle))


def write_suite_report(result: SuiteResult, outdir,
                       star_thresholds=(0.01, 0.05, 0.1)) -> None:
    """fits/<family>_t<t>.json|.csv plus r2_curve.csv, anova.csv, and
    sc_dummies.csv."""
    outdir = Path(outdir)
    fits_dir = outdir / "fits"
    fits_dir.mkdir(parents=True, exist_ok=True)
    for (family, t), fit in sorted(result.fits.items()):
        write_fit_json(fit, fits_dir / f"{family}_t{t}.json")
        write_fit_csv(fit, fits_dir / f"{family}_t{t}.csv", star_thresholds)

    handle, writer = _open_writer(outdir / "r2_curve.csv")
    with handle:
        writer.writerow(["family", "t", "adjusted_r2"])
        for family, curve in result.r2_curve.items():
            for t, value in enumerate(curve):
                writer.writerow([family, t, fmt_real(value)])

    handle, writer = _open_writer(outdir / "anova.csv")
    with handle:
        writer.writerow(["window", "pair", "f_value", "p_value", "rss_full",
                         "rss_restricted", "p_additional", "n"])
        for comp in result.comparisons:
            writer.writerow([
                comp.window, comp.pair, fmt_real(comp.f_value),
                fmt_real(comp.p_value), fmt_real(comp.rss_full),
                fmt_real(comp.rss_restricted), comp.p_additional, comp.n,
            ])

    handle, writer = _open_writer(outdir / "sc_dummies.csv")
    with handle:
        writer.writerow(["window", "mean", "median", "q1", "q3", "share_positive"])
        for window in sorted(result.sc_distributions):
            summary = result.sc_distributions[window]
            writer.writerow([
                window, fmt_real(summary.mean), fmt_real(summary.median),
                fmt_real(summary.q1), fmt_real(summary.q3),
                fmt_real(summary.share_positive),
            ])


def write_bootstrap_csv(report: BootstrapReport, path) -> None:
    handle, writer = _open_writer(Path(path))
    with handle:
        writer.writerow(["variable", "original_estimate", "bootstrap_mean",
                         "bias", "std_error", "retries"])
        for name, coef in report.per_coefficient.items():
            writer.writerow([
                name, fmt_real(coef.original_estimate),
                fmt_real(coef.bootstrap_mean), fmt_real(coef.bias),
                fmt_real(coef.std_error), report.retries,
            ])


def write_histogram_csv(histogram: Histogram, path) -> None:
    """Bins and density curve share one file; bin columns go empty once
    the bins run out."""
    handle, writer = _open_writer(Path(path))
    with handle:
        writer.writerow(["bin_left", "bin_width", "count", "density_x", "density_y"])
        n_rows = max(len(histogram.bin_left), len(histogram.density_x))
        for i in range(n_rows):
            if i < len(histogram.bin_left):
                bin_part = [fmt_real(histogram.bin_left[i]),
                            fmt_real(histogram.bin_width),
                            int(histogram.counts[i])]
            else:
                bin_part = ["", "", ""]
            if i < len(histogram.density_x):
                density_part = [fmt_real(histogram.density_x[i]),
                                fmt_real(histogram.density_y[i])]
            else:
                density_part = ["", ""]
            writer.writerow(bin_part + density_part)


def write_qq_csv(points, path) -> None:
    handle, writer = _open_writer(Path(path))
    with handle:
        writer.writerow(["theoretical", "sample"])
        for theoretical, sample in points:
            writer.writerow([fmt_real(theoretical), fmt_real(sample)])


def write_calibration_csv(report: CalibrationReport, path) -> None:
    handle, writer = _open_writer(Path(path))
    with handle:
        writer.writerow(["variable", "metric", "target", "achieved",
                         "tolerance", "tolerance_kind", "passed"])
        for row in report.rows:
            writer.writerow([
                row.variable, row.metric, fmt_real(row.target),
                fmt_real(row.achieved), fmt_real(row.tolerance),
                row.tolerance_kind, int(row.passed),
            ])


def write_predictions_csv(predictions, path) -> None:
    handle, writer = _open_writer(Path(path))
    with handle:
        writer.writerow(["log_scale", "back_transformed"])
        for log_scale, back in predictions:
            writer.writerow([fmt_real(log_scale), fmt_real(back)])

"""End-to-end command-line tests: files, schemas, determinism, exit codes."""

import csv
import json
from pathlib import Path

import pytest

from citecast.cli import main
from citecast.corpus import write_corpus
from citecast.synth import GeneratorConfig, generate
from helpers import make_corpus, make_record

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def synth_corpus_file(tmp_path_factory):
    # big enough that all calibration targets pass
    outdir = tmp_path_factory.mktemp("synth")
    corpus = generate(GeneratorConfig(n_records=4000, n_scs=25, seed=12))
    path = outdir / "corpus.csv"
    write_corpus(corpus, path)
    return path


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.reader(handle))


class TestSynthSuitePipeline:
    def test_synth_then_suite_emits_schema_valid_files(self, tmp_path,
                                                       synth_corpus_file):
        out = tmp_path / "suite"
        code = main(["suite", "--corpus", str(synth_corpus_file),
                     "--out", str(out), "--workers", "2"])
        assert code == 0

        anova = read_rows(out / "anova.csv")
        assert anova[0] == ["window", "pair", "f_value", "p_value", "rss_full",
                            "rss_restricted", "p_additional", "n"]
        assert len(anova) == 15  # header + 14 comparisons

        r2 = read_rows(out / "r2_curve.csv")
        assert r2[0] == ["family", "t", "adjusted_r2"]
        assert len(r2) == 22  # header + 21 fits

        sc = read_rows(out / "sc_dummies.csv")
        assert len(sc) == 8  # header + 7 windows

        fit_files = sorted((out / "fits").glob("*.json"))
        assert len(fit_files) == 21
        assert len(sorted((out / "fits").glob("*.csv"))) == 21

        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["tool"] == "citecast"
        assert manifest["baseline_provenance"] == "computed_from_corpus"
        decisions = manifest["decisions"]
        for key in ("multi_sc_denominator", "std_dev", "correlation",
                    "include_intercept", "sc_dummy_encoding", "column_order",
                    "empty_dummy_columns", "adjusted_r2", "back_transform",
                    "star_thresholds", "alias_pivot_tol", "quartiles",
                    "anova_denominator_df", "comparisons", "baseline_fallback",
                    "single_record_std"):
            assert key in decisions, key

    def test_outputs_byte_identical_across_runs(self, tmp_path,
                                                synth_corpus_file):
        # identical command (including --out) must reproduce every byte
        import shutil
        out = tmp_path / "suite"
        tracked = ("anova.csv", "r2_curve.csv", "sc_dummies.csv",
                   "manifest.json", "fits/full_t0.json", "fits/full_t0.csv")
        assert main(["suite", "--corpus", str(synth_corpus_file),
                     "--out", str(out)]) == 0
        snapshot = {rel: (out / rel).read_bytes() for rel in tracked}
        shutil.rmtree(out)
        assert main(["suite", "--corpus", str(synth_corpus_file),
                     "--out", str(out)]) == 0
        for rel in tracked:
            assert (out / rel).read_bytes() == snapshot[rel], rel


class TestDescribe:
    def test_golden_byte_identical(self, tmp_path):
        # golden produced by an independent two-pass oracle
        out = tmp_path / "describe"
        code = main(["describe", "--corpus", str(DATA / "golden_corpus.csv"),
                     "--out", str(out)])
        assert code == 0
        golden = (DATA / "golden_descriptive.csv").read_bytes()
        assert (out / "descriptive.csv").read_bytes() == golden
        for name in ("correlation_impact.csv", "correlation_readership.csv",
                     "correlation_cross.csv"):
            assert (out / name).exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["hhi"] == pytest.approx(1 / 3, abs=1e-9)

    def test_log_scale_switch_changes_output(self, tmp_path):
        outs = {}
        for scale in ("raw", "log"):
            out = tmp_path / scale
            assert main(["describe", "--corpus", str(DATA / "golden_corpus.csv"),
                         "--correlation-scale", scale, "--out", str(out)]) == 0
            outs[scale] = (out / "correlation_impact.csv").read_bytes()
        assert outs["raw"] != outs["log"]


class TestFitCommand:
    def test_completely_reduced_t6_columns(self, tmp_path):
        out = tmp_path / "fit"
        code = main(["fit", "--corpus", str(DATA / "golden_corpus.csv"),
                     "--family", "completely_reduced", "--window", "6",
                     "--out", str(out)])
        assert code == 0
        rows = read_rows(out / "fit.csv")
        variables = []
        for row in rows[1:]:
            if not row:
                break
            variables.append(row[0])
        assert variables[0] == "intercept"
        assert variables[1] == "L_IMPACT_t6"
        assert all(v.startswith("D_SC_") for v in variables[2:])
        fit_json = json.loads((out / "fit.json").read_text())
        assert fit_json["spec"]["family"] == "completely_reduced"
        assert fit_json["spec"]["window"] == 6

    def test_external_baselines_echoed(self, tmp_path, synth_corpus_file):
        from citecast import stats
        from citecast.corpus import load_corpus
        corpus = load_corpus(synth_corpus_file)
        baseline_path = tmp_path / "baselines.csv"
        stats.write_baselines(stats.compute_baselines(corpus), baseline_path)
        out = tmp_path / "fit"
        code = main(["fit", "--corpus", str(synth_corpus_file),
                     "--baselines", str(baseline_path),
                     "--family", "reduced", "--window", "0", "--out", str(out)])
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["baseline_provenance"] == "external_file"


class TestPredictCommand:
    def test_round_trip_scores_training_rows(self, tmp_path):
        out = tmp_path / "fit"
        assert main(["fit", "--corpus", str(DATA / "golden_corpus.csv"),
                     "--family", "reduced", "--window", "3",
                     "--out", str(out)]) == 0
        features = tmp_path / "features.csv"
        features.write_text(
            "L_IMPACT_t3,L_IF,sc_codes\n"
            "0.30,0.25,MATH\n"
            "0.80,0.55,PHYS;CHEM\n",
            encoding="utf-8")
        pred_out = tmp_path / "pred"
        assert main(["predict", "--fit", str(out / "fit.json"),
                     "--features", str(features), "--out", str(pred_out)]) == 0
        rows = read_rows(pred_out / "predictions.csv")
        assert rows[0] == ["log_scale", "back_transformed"]
        assert len(rows) == 3
        fit_json = json.loads((out / "fit.json").read_text())
        coef = fit_json["coefficients"]
        # baseline SC is CHEM (first sorted), so MATH contributes a dummy
        expected = (coef["intercept"] + 0.30 * coef["L_IMPACT_t3"]
                    + 0.25 * coef["L_IF"] + coef["D_SC_MATH"])
        assert float(rows[1][0]) == pytest.approx(expected, abs=5e-7)

    def test_missing_feature_exits_one(self, tmp_path):
        out = tmp_path / "fit"
        assert main(["fit", "--corpus", str(DATA / "golden_corpus.csv"),
                     "--family", "reduced", "--window", "3",
                     "--out", str(out)]) == 0
        features = tmp_path / "features.csv"
        features.write_text("L_IMPACT_t3\n0.3\n", encoding="utf-8")
        assert main(["predict", "--fit", str(out / "fit.json"),
                     "--features", str(features),
                     "--out", str(tmp_path / "pred")]) == 1


class TestSynthCommand:
    def test_ground_truth_emits_baselines(self, tmp_path):
        config = {
            "n_records": 300, "n_scs": 5, "seed": 9,
            "ground_truth": {
                "family": "completely_reduced", "window": 3,
                "beta": {"intercept": 1.2, "L_IMPACT_t3": 0.9},
            },
        }
        config_path = tmp_path / "gen.json"
        config_path.write_text(json.dumps(config), encoding="utf-8")
        out = tmp_path / "synth"
        code = main(["synth", "--generator-config", str(config_path),
                     "--out", str(out)])
        assert (out / "corpus.csv").exists()
        assert (out / "baselines.csv").exists()
        assert (out / "calibration_report.csv").exists()
        assert code in (0, 1)  # calibration may wobble at n=300

    def test_deterministic_corpus_bytes(self, tmp_path):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            assert main(["synth", "--records", "500", "--scs", "10",
                         "--seed", "3", "--out", str(out)]) in (0, 1)
            outs.append((out / "corpus.csv").read_bytes())
        assert outs[0] == outs[1]


class TestExitCodes:
    def test_missing_corpus_is_validation_failure(self, tmp_path):
        assert main(["ingest", "--corpus", str(tmp_path / "nope.csv"),
                     "--out", str(tmp_path / "o")]) == 1

    def test_invalid_rows_are_validation_failure(self, tmp_path):
        path = tmp_path / "bad.csv"
        header = ("id,pub_year,doc_type,n_authors,eng,foreign,funding,open,"
                  "pages,n_refs,impact_factor,sc_codes,c0,c1,c2,c3,c4,c5,c6,"
                  "c11,r0,r1,r2,r3,r4,r5,r6")
        path.write_text(header + "\nP1,2010,article,0,0,0,0,0,10,5,1.0,A,"
                        "0,1,2,3,4,5,6,7,0,1,2,3,4,5,6\n", encoding="utf-8")
        assert main(["ingest", "--corpus", str(path),
                     "--out", str(tmp_path / "o")]) == 1

    def test_underdetermined_fit_is_numerical_failure(self, tmp_path):
        corpus = make_corpus(
            make_record(rid="P1", sc_codes=("A",), n_authors=2),
            make_record(rid="P2", sc_codes=("B",), n_authors=5),
        )
        path = tmp_path / "tiny.csv"
        write_corpus(corpus, path)
        assert main(["fit", "--corpus", str(path), "--family", "full",
                     "--window", "0", "--out", str(tmp_path / "o")]) == 2

    def test_ingest_writes_summary(self, tmp_path):
        out = tmp_path / "ingested"
        assert main(["ingest", "--corpus", str(DATA / "golden_corpus.csv"),
                     "--out", str(out)]) == 0
        rows = read_rows(out / "sc_counts.csv")
        assert rows[0] == ["sc", "count"]
        counts = {r[0]: int(r[1]) for r in rows[1:]}
        assert counts == {"CHEM": 4, "MATH": 4, "PHYS": 4}
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["corpus_summary"]["record_count"] == 10


class TestConfigFile:
    def test_config_presets_flags(self, tmp_path):
        config = {"corpus": str(DATA / "golden_corpus.csv"),
                  "out": str(tmp_path / "from_config")}
        config_path = tmp_path / "run.json"
        config_path.write_text(json.dumps(config), encoding="utf-8")
        assert main(["--config", str(config_path), "ingest"]) == 0
        assert (tmp_path / "from_config" / "manifest.json").exists()

    def test_flags_override_config(self, tmp_path):
        config = {"corpus": str(DATA / "golden_corpus.csv"),
                  "out": str(tmp_path / "ignored")}
        config_path = tmp_path / "run.json"
        config_path.write_text(json.dumps(config), encoding="utf-8")
        assert main(["--config", str(config_path), "ingest",
                     "--out", str(tmp_path / "explicit")]) == 0
        assert (tmp_path / "explicit" / "manifest.json").exists()
        assert not (tmp_path / "ignored").exists()
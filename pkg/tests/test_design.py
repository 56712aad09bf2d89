"""Log transform, dummy encoding, and design-matrix construction tests."""

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from citecast.corpus import Corpus
from citecast.design import (
    ModelSpec,
    build_matrix,
    encode_dummies,
    log_transform,
)
from citecast.errors import DomainError, UnknownScError
from citecast.stats import compute_baselines, compute_measures
from helpers import make_corpus, make_record


class TestLogTransform:
    @pytest.mark.parametrize("x,expected", [(0, 0.0), (9, 1.0), (99, 2.0)])
    def test_decades(self, x, expected):
        assert log_transform(x) == pytest.approx(expected, abs=1e-15)

    @settings(max_examples=100, deadline=None)
    @given(x=st.floats(0, 1e12), y=st.floats(0, 1e12))
    def test_monotone(self, x, y):
        # strict for separated inputs; never decreasing even for adjacent
        # floats (where a contraction must sometimes collide outputs)
        if x < y:
            assert log_transform(x) <= log_transform(y)
        if x * (1 + 1e-9) + 1e-12 < y:
            assert log_transform(x) < log_transform(y)

    def test_domain(self):
        with pytest.raises(DomainError):
            log_transform(-0.5)
        with pytest.raises(DomainError):
            log_transform(float("nan"))


class TestEncodeDummies:
    def test_baseline_membership_absorbs(self):
        rec = make_record(doc_type="article", sc_codes=("A",))
        enc = encode_dummies(rec, "A", ("A", "B", "C"))
        assert (enc.d_art, enc.d_rew) == (1, 0)
        assert enc.sc_active == ()

    def test_proceedings_multi_hot(self):
        rec = make_record(doc_type="proceedings", sc_codes=("B", "C"))
        enc = encode_dummies(rec, "A", ("A", "B", "C"))
        assert (enc.d_art, enc.d_rew) == (0, 0)
        assert enc.sc_active == ("B", "C")

    def test_review(self):
        rec = make_record(doc_type="review", sc_codes=("B",))
        enc = encode_dummies(rec, "A", ("A", "B"))
        assert (enc.d_art, enc.d_rew) == (0, 1)
        assert enc.sc_active == ("B",)

    def test_unknown_sc(self):
        rec = make_record(sc_codes=("Z",))
        with pytest.raises(UnknownScError):
            encode_dummies(rec, "A", ("A", "B"))


def three_record_corpus():
    return make_corpus(
        make_record(rid="P1", doc_type="article", sc_codes=("A",), n_authors=9,
                    eng=True, foreign=False, funding=True, open_access=False,
                    pages=9, n_refs=99, impact_factor=9.0),
        make_record(rid="P2", doc_type="review", sc_codes=("A", "B"), n_authors=1,
                    eng=False, foreign=True, funding=False, open_access=True,
                    pages=1, n_refs=0, impact_factor=0.0),
        make_record(rid="P3", doc_type="proceedings", sc_codes=("C",), n_authors=3,
                    eng=False, foreign=False, funding=False, open_access=False,
                    pages=19, n_refs=9, impact_factor=1.0),
    )


class TestModelSpec:
    def test_family_column_sets_nest(self):
        universe = ("A", "B", "C")
        columns = {
            family: set(ModelSpec(family, 2, "A").regressor_list(universe))
            for family in ("full", "reduced", "completely_reduced")
        }
        assert columns["completely_reduced"] < columns["reduced"] < columns["full"]

    def test_json_round_trip(self):
        spec = ModelSpec("reduced", 4, "B", include_intercept=False)
        assert ModelSpec.from_json(spec.to_json()) == spec

    def test_invalid(self):
        from citecast.errors import SchemaError
        with pytest.raises(SchemaError):
            ModelSpec("fullest", 0, "A")
        with pytest.raises(SchemaError):
            ModelSpec("full", 7, "A")


class TestBuildMatrix:
    def test_full_column_order(self):
        corpus = three_record_corpus()
        measures = compute_measures(corpus, compute_baselines(corpus))
        matrix = build_matrix(corpus, measures, ModelSpec("full", 2, "A"))
        assert matrix.column_names == (
            "intercept", "L_IMPACT_t2", "L_READ_t2", "L_AUTH", "D_ENG",
            "D_FOREIGN", "D_FUNDING", "D_OPEN", "L_PAGES", "L_IF",
            "D_ART", "D_REW", "L_REFER", "D_SC_B", "D_SC_C",
        )

    def test_completely_reduced_columns(self):
        corpus = three_record_corpus()
        measures = compute_measures(corpus, compute_baselines(corpus))
        matrix = build_matrix(
            corpus, measures, ModelSpec("completely_reduced", 0, "A"))
        substantive = [c for c in matrix.column_names
                       if c != "intercept" and not c.startswith("D_SC_")]
        assert substantive == ["L_IMPACT_t0"]

    def test_hand_built_expected_matrix(self):
        corpus = three_record_corpus()
        measures = compute_measures(corpus, compute_baselines(corpus))
        matrix = build_matrix(corpus, measures, ModelSpec("full", 2, "A"))
        X = matrix.to_dense()

        lt = log_transform

        for i, rid in enumerate(("P1", "P2", "P3")):
            rec = corpus.records[rid]
            m = measures[rid]
            expected = [
                1.0, lt(m.impact[2]), lt(m.readership[2]), lt(rec.n_authors),
                float(rec.eng), float(rec.foreign), float(rec.funding),
                float(rec.open), lt(rec.pages), lt(rec.impact_factor),
                float(rec.doc_type == "article"),
                float(rec.doc_type == "review"), lt(rec.n_refs),
            ]
            np.testing.assert_allclose(X[i, :13], expected, rtol=0, atol=1e-15)
        # multi-hot dummies: P2 in B, P3 in C; baseline A has no column
        np.testing.assert_array_equal(X[:, 13], [0.0, 1.0, 0.0])
        np.testing.assert_array_equal(X[:, 14], [0.0, 0.0, 1.0])
        np.testing.assert_allclose(
            matrix.response,
            [lt(measures[rid].impact[11]) for rid in ("P1", "P2", "P3")],
            rtol=0, atol=1e-15)

    def test_deterministic_and_row_ordered(self):
        corpus = three_record_corpus()
        measures = compute_measures(corpus, compute_baselines(corpus))
        spec = ModelSpec("full", 5, "A")
        first = build_matrix(corpus, measures, spec)
        second = build_matrix(corpus, measures, spec)
        np.testing.assert_array_equal(first.to_dense(), second.to_dense())
        assert first.row_ids == corpus.ids

    def test_empty_dummy_dropped_and_reported(self):
        # an SC present in the universe but with no member rows would be an
        # exactly zero column; it must be dropped before fitting
        base = three_record_corpus()
        corpus = Corpus(records=base.records, sc_universe=("A", "B", "C", "GHOST"))
        measures = compute_measures(base, compute_baselines(base))
        matrix = build_matrix(corpus, measures, ModelSpec("full", 1, "A"))
        assert matrix.dropped_empty == ("D_SC_GHOST",)
        assert "D_SC_GHOST" not in matrix.column_names

    def test_unknown_baseline(self):
        corpus = three_record_corpus()
        measures = compute_measures(corpus, compute_baselines(corpus))
        with pytest.raises(UnknownScError):
            build_matrix(corpus, measures, ModelSpec("full", 0, "NOPE"))

    def test_dummy_block_is_sparse(self):
        corpus = three_record_corpus()
        measures = compute_measures(corpus, compute_baselines(corpus))
        matrix = build_matrix(corpus, measures, ModelSpec("reduced", 3, "A"))
        assert sp.issparse(matrix.dummies)
        assert set(np.unique(matrix.dummies.toarray())) <= {0.0, 1.0}

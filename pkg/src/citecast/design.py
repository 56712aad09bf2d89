"""Model specifications and design-matrix construction.

Three nested regression families share a fixed response (log-transformed
11-year normalized impact) and subject-category dummy controls; only the
windowed regressors differ.  All continuous regressors are base-10
log-transformed with a unit shift, so zero counts stay in the sample.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .corpus import Corpus, PublicationRecord, RESPONSE_WINDOW
from .errors import DomainError, EmptyCorpusError, SchemaError, UnknownScError

FAMILIES = ("full", "reduced", "completely_reduced")

INTERCEPT = "intercept"

#: Substantive (non-dummy-control) regressors of the full family, in
#: display order; {t} is the citation window.
FULL_REGRESSORS = ("L_IMPACT_t{t}", "L_READ_t{t}", "L_AUTH", "D_ENG",
                   "D_FOREIGN", "D_FUNDING", "D_OPEN", "L_PAGES", "L_IF",
                   "D_ART", "D_REW", "L_REFER")
REDUCED_REGRESSORS = ("L_IMPACT_t{t}", "L_IF")
COMPLETELY_REDUCED_REGRESSORS = ("L_IMPACT_t{t}",)

_FAMILY_REGRESSORS = {
    "full": FULL_REGRESSORS,
    "reduced": REDUCED_REGRESSORS,
    "completely_reduced": COMPLETELY_REDUCED_REGRESSORS,
}

DUMMY_PREFIX = "D_SC_"


_LN10 = math.log(10.0)


def log_transform(x: float) -> float:
    """log10(x + 1); strictly increasing, maps 0 to 0.

    Computed via log1p so counts far below float resolution still map
    above zero.
    """
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"log_transform requires finite x >= 0, got {x}")
    return math.log1p(x) / _LN10


def dummy_name(sc_code: str) -> str:
    return DUMMY_PREFIX + sc_code


@dataclass(frozen=True, slots=True)
class ModelSpec:
    """One of the 21 regressions: family x citation window."""

    family: str
    window: int
    baseline_sc: str
    include_intercept: bool = True

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SchemaError(f"unknown family {self.family!r}")
        if self.window not in range(0, 7):
            raise SchemaError(f"window must be in 0..6, got {self.window}")

    @property
    def substantive_regressors(self) -> tuple[str, ...]:
        return tuple(
            name.format(t=self.window) for name in _FAMILY_REGRESSORS[self.family]
        )

    def regressor_list(self, sc_universe) -> tuple[str, ...]:
        """Named columns implied by family and window: substantive
        regressors, then SC dummies in sorted code order, baseline
        excluded."""
        dummies = tuple(
            dummy_name(code) for code in sorted(sc_universe)
            if code != self.baseline_sc
        )
        return self.substantive_regressors + dummies

    def to_json(self) -> str:
        return json.dumps({
            "family": self.family,
            "window": self.window,
            "baseline_sc": self.baseline_sc,
            "include_intercept": self.include_intercept,
        }, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "ModelSpec":
        obj = json.loads(text)
        return ModelSpec(
            family=obj["family"],
            window=int(obj["window"]),
            baseline_sc=obj["baseline_sc"],
            include_intercept=bool(obj.get("include_intercept", True)),
        )


@dataclass(frozen=True, slots=True)
class DummyEncoding:
    d_art: int
    d_rew: int
    sc_active: tuple[str, ...]  # non-baseline member SCs, multi-hot


def encode_dummies(record: PublicationRecord, baseline_sc: str,
                   sc_universe) -> DummyEncoding:
    """Document-type and subject-category indicators for one record;
    proceedings are the residual category, the baseline SC has no column."""
    universe = set(sc_universe)
    unknown = [c for c in record.sc_codes if c not in universe]
    if unknown:
        raise UnknownScError(f"record {record.id!r} has unknown SC codes {unknown}")
    return DummyEncoding(
        d_art=int(record.doc_type == "article"),
        d_rew=int(record.doc_type == "review"),
        sc_active=tuple(c for c in record.sc_codes if c != baseline_sc),
    )


@dataclass(frozen=True, slots=True)
class DesignMatrix:
    """Realized numeric matrix for one ModelSpec.

    The dense block holds the intercept and substantive regressors; SC
    dummies live in a sparse indicator block.  `dropped_empty` lists
    dummy columns removed because no row is a member (reported as
    aliased by the fit).
    """

    spec: ModelSpec | None
    row_ids: tuple[str, ...]
    dense_names: tuple[str, ...]
    dense: np.ndarray
    dummy_names: tuple[str, ...]
    dummies: sp.csc_matrix
    response: np.ndarray
    dropped_empty: tuple[str, ...] = field(default=())

    @property
    def n_rows(self) -> int:
        return self.dense.shape[0]

    @property
    def column_names(self) -> tuple[str, ...]:
        return self.dense_names + self.dummy_names

    @property
    def n_columns(self) -> int:
        return len(self.column_names)

    def to_dense(self) -> np.ndarray:
        """Full numeric matrix; may alias internal storage, treat as
        read-only."""
        if self.dummies.shape[1] == 0:
            return self.dense
        return np.hstack([self.dense, self.dummies.toarray()])


def _log10p1(values: np.ndarray) -> np.ndarray:
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise DomainError("log transform requires finite nonnegative values")
    return np.log1p(values) / _LN10


def build_matrix(corpus: Corpus, measures, spec: ModelSpec) -> DesignMatrix:
    """Assemble the design matrix and response for `spec`.

    Rows follow corpus id order; column order is intercept (when
    included), substantive regressors, then SC dummies sorted by code.
    """
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot build a design matrix on an empty corpus")
    if spec.baseline_sc not in corpus.sc_universe:
        raise UnknownScError(f"baseline SC {spec.baseline_sc!r} not in corpus")
    records = list(corpus)
    n = len(records)
    t = spec.window

    impact_t = np.array([measures[r.id].impact[t] for r in records])
    impact_resp = np.array([measures[r.id].impact[RESPONSE_WINDOW] for r in records])
    response = _log10p1(impact_resp)

    source: dict[str, np.ndarray] = {
        f"L_IMPACT_t{t}": _log10p1(impact_t),
        "L_IF": _log10p1(np.array([r.impact_factor for r in records])),
    }
    if spec.family == "full":
        read_t = np.array([measures[r.id].readership[t] for r in records])
        source[f"L_READ_t{t}"] = _log10p1(read_t)
        source["L_AUTH"] = _log10p1(np.array([r.n_authors for r in records], dtype=float))
        source["L_PAGES"] = _log10p1(np.array([r.pages for r in records], dtype=float))
        source["L_REFER"] = _log10p1(np.array([r.n_refs for r in records], dtype=float))
        source["D_ENG"] = np.array([r.eng for r in records], dtype=float)
        source["D_FOREIGN"] = np.array([r.foreign for r in records], dtype=float)
        source["D_FUNDING"] = np.array([r.funding for r in records], dtype=float)
        source["D_OPEN"] = np.array([r.open for r in records], dtype=float)
        source["D_ART"] = np.array([r.doc_type == "article" for r in records], dtype=float)
        source["D_REW"] = np.array([r.doc_type == "review" for r in records], dtype=float)

    dense_names = list(spec.substantive_regressors)
    dense_cols = [source[name] for name in dense_names]
    if spec.include_intercept:
        dense_names.insert(0, INTERCEPT)
        dense_cols.insert(0, np.ones(n))
    dense = np.column_stack(dense_cols)

    dummy_codes = [c for c in sorted(corpus.sc_universe) if c != spec.baseline_sc]
    col_of = {code: j for j, code in enumerate(dummy_codes)}
    rows, cols = [], []
    for i, rec in enumerate(records):
        enc = encode_dummies(rec, spec.baseline_sc, corpus.sc_universe)
        for code in enc.sc_active:
            rows.append(i)
            cols.append(col_of[code])
    dummies = sp.csc_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(n, len(dummy_codes))
    )

    # Empty dummy columns would be exactly rank deficient; drop them here
    # and report them as aliased.
    occupancy = np.asarray(dummies.sum(axis=0)).ravel()
    keep = occupancy > 0
    dropped_empty = tuple(
        dummy_name(code) for code, k in zip(dummy_codes, keep) if not k
    )
    if dropped_empty:
        dummies = dummies[:, keep]
        dummy_codes = [c for c, k in zip(dummy_codes, keep) if k]

    return DesignMatrix(
        spec=spec,
        row_ids=corpus.ids,
        dense_names=tuple(dense_names),
        dense=dense,
        dummy_names=tuple(dummy_name(c) for c in dummy_codes),
        dummies=dummies,
        response=response,
        dropped_empty=dropped_empty,
    )

"""Field normalization and descriptive statistics.

Normalization divides a publication's cumulative count by the mean count
of publications in the same subject category and publication year; a
multi-SC publication's denominator is the arithmetic mean of its member
SCs' baseline means.  Baselines come from an external file when supplied,
else are computed from the loaded corpus, with provenance recorded.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import (
    CITATION_WINDOWS,
    READERSHIP_WINDOWS,
    Corpus,
    PublicationRecord,
    corpus_manifest,
)
from .design import log_transform
from .errors import (
    CorpusIOError,
    DegenerateInputError,
    EmptyCorpusError,
    MissingBaselineError,
    SchemaError,
    ZeroBaselineError,
)

PROVENANCE_EXTERNAL = "external_file"
PROVENANCE_COMPUTED = "computed_from_corpus"

BASELINE_CSV_HEADER = ["sc", "year", "window", "mean_citations", "mean_readerships"]

#: Variables of the descriptive table, in display order.
DESCRIPTIVE_VARIABLES = (
    tuple(f"IMPACT_t{w}" for w in (11, 6, 5, 4, 3, 2, 1, 0))
    + tuple(f"READ_t{w}" for w in (6, 5, 4, 3, 2, 1, 0))
    + ("AUTH", "D_ENG", "D_FOREIGN", "D_FUNDING", "D_OPEN",
       "PAGES", "IF", "D_ART", "D_REW", "REFER")
)

#: Time-invariant variables entering the cross-correlation matrix.
CROSS_VARIABLES = ("AUTH", "D_ENG", "D_FOREIGN", "D_FUNDING", "D_OPEN",
                   "PAGES", "IF", "D_ART", "D_REW", "REFER")


@dataclass(frozen=True, slots=True)
class BaselineTable:
    """Per (sc, pub_year, window) mean citations and readerships.

    Readership means exist for windows 0-6 only; the window-11 slot is
    None.
    """

    entries: dict[tuple[str, int, int], tuple[float, float | None]]
    provenance: str

    def mean_citations(self, sc: str, year: int, window: int) -> float:
        try:
            return self.entries[(sc, year, window)][0]
        except KeyError:
            raise MissingBaselineError(sc, year, window)

    def mean_readerships(self, sc: str, year: int, window: int) -> float:
        try:
            value = self.entries[(sc, year, window)][1]
        except KeyError:
            raise MissingBaselineError(sc, year, window)
        if value is None:
            raise MissingBaselineError(sc, year, window)
        return value

    @staticmethod
    def uniform(corpus: Corpus, value: float = 1.0) -> "BaselineTable":
        """Constant-denominator table covering every (sc, year) in the
        corpus; normalized measures then equal the raw counts divided by
        `value`."""
        entries = {}
        pairs = {(code, rec.pub_year) for rec in corpus for code in rec.sc_codes}
        for sc, year in pairs:
            for w in CITATION_WINDOWS:
                rvalue = value if w in READERSHIP_WINDOWS else None
                entries[(sc, year, w)] = (value, rvalue)
        return BaselineTable(entries=entries, provenance=PROVENANCE_EXTERNAL)


@dataclass(frozen=True, slots=True)
class NormalizedMeasures:
    """Field-normalized cumulative impact and readership per window."""

    impact: dict[int, float]
    readership: dict[int, float]


def compute_baselines(corpus: Corpus) -> BaselineTable:
    """Group means of raw counts per (sc, year, window); multi-SC
    publications contribute fully to each of their SCs."""
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot compute baselines on an empty corpus")
    sums: dict[tuple[str, int], list] = {}
    for rec in corpus:
        for code in rec.sc_codes:
            key = (code, rec.pub_year)
            cell = sums.get(key)
            if cell is None:
                cell = [0, [0.0] * len(CITATION_WINDOWS), [0.0] * len(READERSHIP_WINDOWS)]
                sums[key] = cell
            cell[0] += 1
            for i, w in enumerate(CITATION_WINDOWS):
                cell[1][i] += rec.citations[w]
            for i, w in enumerate(READERSHIP_WINDOWS):
                cell[2][i] += rec.readerships[w]
    entries: dict[tuple[str, int, int], tuple[float, float | None]] = {}
    for (sc, year), (count, csum, rsum) in sums.items():
        for i, w in enumerate(CITATION_WINDOWS):
            mean_r = rsum[READERSHIP_WINDOWS.index(w)] / count if w in READERSHIP_WINDOWS else None
            entries[(sc, year, w)] = (csum[i] / count, mean_r)
    return BaselineTable(entries=entries, provenance=PROVENANCE_COMPUTED)


def _normalize_one(count: float, denominator: float, sc_codes, year, window) -> float:
    if denominator == 0.0:
        if count == 0.0:
            return 0.0
        raise ZeroBaselineError(
            f"zero baseline for scs={list(sc_codes)} year={year} window={window} "
            f"with positive count {count}"
        )
    return count / denominator


def normalize_measures(record: PublicationRecord, baselines: BaselineTable) -> NormalizedMeasures:
    """Field-normalize one record against the baseline table.

    The denominator for a multi-SC publication is the arithmetic mean of
    its SCs' baseline means.
    """
    impact = {}
    for w in CITATION_WINDOWS:
        denom = sum(
            baselines.mean_citations(sc, record.pub_year, w) for sc in record.sc_codes
        ) / len(record.sc_codes)
        impact[w] = _normalize_one(record.citations[w], denom, record.sc_codes,
                                   record.pub_year, w)
    readership = {}
    for w in READERSHIP_WINDOWS:
        denom = sum(
            baselines.mean_readerships(sc, record.pub_year, w) for sc in record.sc_codes
        ) / len(record.sc_codes)
        readership[w] = _normalize_one(record.readerships[w], denom, record.sc_codes,
                                       record.pub_year, w)
    return NormalizedMeasures(impact=impact, readership=readership)


def compute_measures(corpus: Corpus, baselines: BaselineTable) -> dict[str, NormalizedMeasures]:
    """Normalized measures for every record, keyed by id in corpus order."""
    return {rec.id: normalize_measures(rec, baselines) for rec in corpus}


def _variable_columns(corpus: Corpus, measures: dict[str, NormalizedMeasures]):
    """Raw-scale value arrays for every descriptive-table variable, in
    corpus order."""
    records = list(corpus)
    columns: dict[str, np.ndarray] = {}
    for w in CITATION_WINDOWS:
        columns[f"IMPACT_t{w}"] = np.array(
            [measures[r.id].impact[w] for r in records], dtype=float)
    for w in READERSHIP_WINDOWS:
        columns[f"READ_t{w}"] = np.array(
            [measures[r.id].readership[w] for r in records], dtype=float)
    columns["AUTH"] = np.array([r.n_authors for r in records], dtype=float)
    columns["D_ENG"] = np.array([r.eng for r in records], dtype=float)
    columns["D_FOREIGN"] = np.array([r.foreign for r in records], dtype=float)
    columns["D_FUNDING"] = np.array([r.funding for r in records], dtype=float)
    columns["D_OPEN"] = np.array([r.open for r in records], dtype=float)
    columns["PAGES"] = np.array([r.pages for r in records], dtype=float)
    columns["IF"] = np.array([r.impact_factor for r in records], dtype=float)
    columns["D_ART"] = np.array([r.doc_type == "article" for r in records], dtype=float)
    columns["D_REW"] = np.array([r.doc_type == "review" for r in records], dtype=float)
    columns["REFER"] = np.array([r.n_refs for r in records], dtype=float)
    return columns


@dataclass(frozen=True, slots=True)
class DescriptiveRow:
    variable: str
    mean: float
    std_dev: float
    minimum: float
    maximum: float
    degenerate: bool  # n == 1: std_dev reported as 0


def descriptive_table(corpus: Corpus, measures: dict[str, NormalizedMeasures]) -> list[DescriptiveRow]:
    """Mean, sample standard deviation (n-1), min, max for every analyzed
    variable; dummy means are proportions."""
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot describe an empty corpus")
    columns = _variable_columns(corpus, measures)
    n = len(corpus)
    rows = []
    for name in DESCRIPTIVE_VARIABLES:
        values = columns[name]
        degenerate = n == 1
        std = 0.0 if degenerate else float(np.std(values, ddof=1))
        rows.append(DescriptiveRow(
            variable=name,
            mean=float(np.mean(values)),
            std_dev=std,
            minimum=float(np.min(values)),
            maximum=float(np.max(values)),
            degenerate=degenerate,
        ))
    return rows


def hhi(corpus: Corpus) -> float:
    """Herfindahl-Hirschman concentration of publications across SCs,
    on full multi-assignment shares."""
    manifest = corpus_manifest(corpus)
    total = sum(manifest.per_sc_counts.values())
    return sum((c / total) ** 2 for c in manifest.per_sc_counts.values())


def pearson(x, y) -> float:
    """Sample Pearson correlation of two equal-length sequences."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DegenerateInputError("sequences must be 1-d and equal length")
    if x.size < 2:
        raise DegenerateInputError("need at least 2 points")
    xd = x - x.mean()
    yd = y - y.mean()
    sx = math.sqrt(float(xd @ xd))
    sy = math.sqrt(float(yd @ yd))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateInputError("zero variance")
    return float((xd @ yd) / (sx * sy))


@dataclass(frozen=True, slots=True)
class CorrelationMatrix:
    labels: tuple[str, ...]
    values: np.ndarray  # symmetric, unit diagonal; NaN marks degenerate cells
    degenerate: tuple[str, ...]  # constant columns


@dataclass(frozen=True, slots=True)
class CorrelationMatrices:
    impact: CorrelationMatrix
    readership: CorrelationMatrix
    cross: CorrelationMatrix


def _correlation_matrix(labels, columns, scale: str) -> CorrelationMatrix:
    data = []
    for name in labels:
        values = columns[name]
        if scale == "log" and not name.startswith("D_"):
            values = np.array([log_transform(v) for v in values])
        data.append(values)
    degenerate = tuple(
        name for name, values in zip(labels, data) if float(np.std(values)) == 0.0
    )
    k = len(labels)
    out = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            if labels[i] in degenerate or labels[j] in degenerate:
                out[i, j] = out[j, i] = np.nan
            else:
                out[i, j] = out[j, i] = pearson(data[i], data[j])
    return CorrelationMatrix(labels=tuple(labels), values=out, degenerate=degenerate)


def correlation_matrices(corpus: Corpus, measures: dict[str, NormalizedMeasures],
                         scale: str = "raw") -> CorrelationMatrices:
    """Impact and readership autocorrelation matrices plus the
    cross-correlation matrix of time-invariant variables.

    `scale` is "raw" (default) or "log"; dummies are never transformed.
    """
    if len(corpus) < 2:
        raise EmptyCorpusError("need at least 2 records for correlations")
    if scale not in ("raw", "log"):
        raise DegenerateInputError(f"unknown correlation scale {scale!r}")
    columns = _variable_columns(corpus, measures)
    impact_labels = [f"IMPACT_t{w}" for w in CITATION_WINDOWS]
    read_labels = [f"READ_t{w}" for w in READERSHIP_WINDOWS]
    return CorrelationMatrices(
        impact=_correlation_matrix(impact_labels, columns, scale),
        readership=_correlation_matrix(read_labels, columns, scale),
        cross=_correlation_matrix(CROSS_VARIABLES, columns, scale),
    )


def load_baselines(path) -> BaselineTable:
    """Read a baseline table from its CSV interchange format."""
    path = Path(path)
    entries: dict[tuple[str, int, int], tuple[float, float | None]] = {}
    try:
        with path.open(newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header != BASELINE_CSV_HEADER:
                raise SchemaError(f"bad baseline header {header}")
            for row_no, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 5:
                    raise SchemaError("expected 5 columns", row=row_no)
                sc, year_s, window_s, mc_s, mr_s = row
                try:
                    year, window = int(year_s), int(window_s)
                    mean_c = float(mc_s)
                    mean_r = float(mr_s) if mr_s != "" else None
                except ValueError as exc:
                    raise SchemaError(str(exc), row=row_no)
                if mean_c < 0 or (mean_r is not None and mean_r < 0):
                    raise SchemaError("negative baseline mean", row=row_no)
                entries[(sc, year, window)] = (mean_c, mean_r)
    except OSError as exc:
        raise CorpusIOError(f"cannot read {path}: {exc}") from exc
    return BaselineTable(entries=entries, provenance=PROVENANCE_EXTERNAL)


def write_baselines(baselines: BaselineTable, path) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(BASELINE_CSV_HEADER)
            for (sc, year, window) in sorted(baselines.entries):
                mean_c, mean_r = baselines.entries[(sc, year, window)]
                writer.writerow([
                    sc, year, window,
                    repr(float(mean_c)),
                    "" if mean_r is None else repr(float(mean_r)),
                ])
    except OSError as exc:
        raise CorpusIOError(f"cannot write {path}: {exc}") from exc

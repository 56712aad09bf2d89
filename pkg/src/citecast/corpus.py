"""Publication data model, corpus ingestion, validation, and manifests.

A corpus is an immutable, insertion-ordered collection of publication
records.  Citation and readership trajectories are cumulative counts at
fixed windows (years post-publication); window semantics are the data
supplier's contract and are not reinterpreted here.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    CorpusIOError,
    DuplicateIdError,
    EmptyCorpusError,
    SchemaError,
    ValidationError,
)

CITATION_WINDOWS = (0, 1, 2, 3, 4, 5, 6, 11)
READERSHIP_WINDOWS = (0, 1, 2, 3, 4, 5, 6)
PREDICTOR_WINDOWS = (0, 1, 2, 3, 4, 5, 6)
RESPONSE_WINDOW = 11

DOC_TYPES = ("article", "review", "proceedings")

CSV_HEADER = (
    "id,pub_year,doc_type,n_authors,eng,foreign,funding,open,pages,n_refs,"
    "impact_factor,sc_codes,c0,c1,c2,c3,c4,c5,c6,c11,r0,r1,r2,r3,r4,r5,r6"
).split(",")

@dataclass(frozen=True, slots=True)
class PublicationRecord:
    """One publication: metadata plus cumulative citation and readership
    trajectories.

    Trajectory values are stored as floats so that synthetic
    parameter-recovery corpora (real-valued by construction) share the
    same model; file writers emit integers whenever values are integral.
    """

    id: str
    pub_year: int
    doc_type: str
    n_authors: int
    eng: bool
    foreign: bool
    funding: bool
    open: bool
    pages: int
    n_refs: int
    impact_factor: float
    sc_codes: tuple[str, ...]
    citations: dict[int, float]
    readerships: dict[int, float]


def validate_record(record: PublicationRecord) -> list[str]:
    """Return one description per violated invariant; empty means valid.

    Never raises: violations are data, not errors.
    """
    violations = []
    if not record.id:
        violations.append("empty id")
    if record.doc_type not in DOC_TYPES:
        violations.append(f"doc_type {record.doc_type!r} not in {DOC_TYPES}")
    if record.n_authors < 1:
        violations.append("n_authors < 1")
    if record.pages < 1:
        violations.append("pages < 1")
    if record.n_refs < 0:
        violations.append("n_refs < 0")
    if not (math.isfinite(record.impact_factor) and record.impact_factor >= 0.0):
        violations.append("impact_factor not a finite nonnegative number")
    if not record.sc_codes:
        violations.append("empty sc_codes")
    elif len(set(record.sc_codes)) != len(record.sc_codes):
        violations.append("duplicate sc_codes")
    missing_c = [w for w in CITATION_WINDOWS if w not in record.citations]
    if missing_c:
        violations.append(f"missing citation windows {missing_c}")
    missing_r = [w for w in READERSHIP_WINDOWS if w not in record.readerships]
    if missing_r:
        violations.append(f"missing readership windows {missing_r}")
    for label, traj, windows in (
        ("citations", record.citations, CITATION_WINDOWS),
        ("readerships", record.readerships, READERSHIP_WINDOWS),
    ):
        present = [w for w in windows if w in traj]
        if any(not (math.isfinite(traj[w]) and traj[w] >= 0.0) for w in present):
            violations.append(f"negative or non-finite {label}")
        pairs = list(zip(present, present[1:]))
        if any(traj[a] > traj[b] for a, b in pairs):
            violations.append(f"non-monotone {label}")
    return violations


@dataclass(frozen=True, slots=True)
class Corpus:
    """Immutable, insertion-ordered publication collection.

    `sc_universe` is the sorted union of every record's sc_codes; reads
    are safe from any number of concurrent workers.
    """

    records: dict[str, PublicationRecord]
    sc_universe: tuple[str, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records.values())

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self.records.keys())

    @staticmethod
    def from_records(records) -> "Corpus":
        """Build a validated corpus; raises on duplicate ids or invalid
        records."""
        by_id: dict[str, PublicationRecord] = {}
        failures = []
        codes: set[str] = set()
        for rec in records:
            if rec.id in by_id:
                raise DuplicateIdError(rec.id)
            by_id[rec.id] = rec
            violations = validate_record(rec)
            if violations:
                failures.append((rec.id, violations))
            codes.update(rec.sc_codes)
        if failures:
            raise ValidationError(failures)
        return Corpus(records=by_id, sc_universe=tuple(sorted(codes)))


@dataclass(frozen=True, slots=True)
class CorpusManifest:
    record_count: int
    sc_count: int
    per_sc_counts: dict[str, int]
    year_min: int
    year_max: int


def corpus_manifest(corpus: Corpus) -> CorpusManifest:
    """Summary counts; multi-SC publications count once in each member SC."""
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot summarize an empty corpus")
    per_sc = {code: 0 for code in corpus.sc_universe}
    years = []
    for rec in corpus:
        years.append(rec.pub_year)
        for code in rec.sc_codes:
            per_sc[code] += 1
    return CorpusManifest(
        record_count=len(corpus),
        sc_count=len(corpus.sc_universe),
        per_sc_counts=per_sc,
        year_min=min(years),
        year_max=max(years),
    )


def _parse_int(raw: str, row: int, name: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"expected integer, got {raw!r}", row=row, field=name)


def _parse_bool(raw, row: int, name: str) -> bool:
    # CSV gives "0"/"1" strings, JSONL gives 0/1 numbers or true/false.
    if raw in ("0", 0, False):
        return False
    if raw in ("1", 1, True):
        return True
    raise SchemaError(f"expected 0 or 1, got {raw!r}", row=row, field=name)


def _parse_real(raw: str, row: int, name: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise SchemaError(f"expected number, got {raw!r}", row=row, field=name)
    return value


def _parse_count(raw, row: int, name: str) -> float:
    # Trajectory cells are integers in production data; decimals are
    # accepted so parameter-recovery corpora round-trip.
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise SchemaError(f"expected count, got {raw!r}", row=row, field=name)
    return value


def _record_from_row(row_map: dict, row_no: int, sc_list) -> PublicationRecord:
    return PublicationRecord(
        id=str(row_map["id"]),
        pub_year=_parse_int(str(row_map["pub_year"]), row_no, "pub_year"),
        doc_type=str(row_map["doc_type"]),
        n_authors=_parse_int(str(row_map["n_authors"]), row_no, "n_authors"),
        eng=_parse_bool(row_map["eng"], row_no, "eng"),
        foreign=_parse_bool(row_map["foreign"], row_no, "foreign"),
        funding=_parse_bool(row_map["funding"], row_no, "funding"),
        open=_parse_bool(row_map["open"], row_no, "open"),
        pages=_parse_int(str(row_map["pages"]), row_no, "pages"),
        n_refs=_parse_int(str(row_map["n_refs"]), row_no, "n_refs"),
        impact_factor=_parse_real(str(row_map["impact_factor"]), row_no, "impact_factor"),
        sc_codes=tuple(sc_list),
        citations={w: _parse_count(row_map[f"c{w}"], row_no, f"c{w}") for w in CITATION_WINDOWS},
        readerships={w: _parse_count(row_map[f"r{w}"], row_no, f"r{w}") for w in READERSHIP_WINDOWS},
    )


def _load_csv_rows(path: Path):
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError("empty file, header required")
        if header != CSV_HEADER:
            missing = sorted(set(CSV_HEADER) - set(header))
            extra = sorted(set(header) - set(CSV_HEADER))
            raise SchemaError(
                f"bad header: missing columns {missing}, unexpected {extra}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(CSV_HEADER):
                raise SchemaError(
                    f"expected {len(CSV_HEADER)} columns, got {len(row)}",
                    row=row_no,
                )
            row_map = dict(zip(CSV_HEADER, row))
            sc_list = [c for c in row_map["sc_codes"].split(";") if c]
            yield _record_from_row(row_map, row_no, sc_list)


def _load_jsonl_rows(path: Path):
    with path.open(encoding="utf-8") as handle:
        for row_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON: {exc}", row=row_no)
            missing = sorted(set(CSV_HEADER) - set(obj))
            if missing:
                raise SchemaError(f"missing fields {missing}", row=row_no)
            extra = sorted(set(obj) - set(CSV_HEADER))
            if extra:
                raise SchemaError(f"unexpected fields {extra}", row=row_no)
            sc_list = obj["sc_codes"]
            if not isinstance(sc_list, list):
                raise SchemaError("sc_codes must be an array", row=row_no,
                                  field="sc_codes")
            yield _record_from_row(obj, row_no, [str(c) for c in sc_list])


def load_corpus(path, format: str | None = None) -> Corpus:
    """Load and validate a corpus from a CSV or JSONL file.

    `format` defaults to the file suffix (.csv / .jsonl).
    """
    path = Path(path)
    if format is None:
        format = "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else "csv"
    if format not in ("csv", "jsonl"):
        raise SchemaError(f"unknown corpus format {format!r}")
    try:
        loader = _load_csv_rows if format == "csv" else _load_jsonl_rows
        records = list(loader(path))
    except OSError as exc:
        raise CorpusIOError(f"cannot read {path}: {exc}") from exc
    return Corpus.from_records(records)


def format_count(value: float) -> str:
    """Integral trajectory values print as integers, others as shortest
    round-trip decimals."""
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def _record_to_row(rec: PublicationRecord) -> list[str]:
    return [
        rec.id,
        str(rec.pub_year),
        rec.doc_type,
        str(rec.n_authors),
        str(int(rec.eng)),
        str(int(rec.foreign)),
        str(int(rec.funding)),
        str(int(rec.open)),
        str(rec.pages),
        str(rec.n_refs),
        repr(float(rec.impact_factor)),
        ";".join(rec.sc_codes),
        *[format_count(rec.citations[w]) for w in CITATION_WINDOWS],
        *[format_count(rec.readerships[w]) for w in READERSHIP_WINDOWS],
    ]


def write_corpus(corpus: Corpus, path, format: str | None = None) -> None:
    """Write a corpus so that load_corpus(write_corpus(c)) == c."""
    path = Path(path)
    if format is None:
        format = "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else "csv"
    try:
        if format == "csv":
            with path.open("w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle)
                writer.writerow(CSV_HEADER)
                for rec in corpus:
                    writer.writerow(_record_to_row(rec))
        elif format == "jsonl":
            with path.open("w", encoding="utf-8") as handle:
                for rec in corpus:
                    obj = {
                        "id": rec.id,
                        "pub_year": rec.pub_year,
                        "doc_type": rec.doc_type,
                        "n_authors": rec.n_authors,
                        "eng": int(rec.eng),
                        "foreign": int(rec.foreign),
                        "funding": int(rec.funding),
                        "open": int(rec.open),
                        "pages": rec.pages,
                        "n_refs": rec.n_refs,
                        "impact_factor": float(rec.impact_factor),
                        "sc_codes": list(rec.sc_codes),
                    }
                    for w in CITATION_WINDOWS:
                        v = rec.citations[w]
                        obj[f"c{w}"] = int(v) if float(v).is_integer() else float(v)
                    for w in READERSHIP_WINDOWS:
                        v = rec.readerships[w]
                        obj[f"r{w}"] = int(v) if float(v).is_integer() else float(v)
                    handle.write(json.dumps(obj) + "\n")
        else:
            raise SchemaError(f"unknown corpus format {format!r}")
    except OSError as exc:
        raise CorpusIOError(f"cannot write {path}: {exc}") from exc

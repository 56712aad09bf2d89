"""Shared fixture builders for the test suite."""

import numpy as np
import scipy.sparse as sp

from citecast.corpus import Corpus, PublicationRecord
from citecast.design import DesignMatrix


def make_record(rid="P1", pub_year=2010, doc_type="article", n_authors=3,
                eng=False, foreign=False, funding=True, open_access=False,
                pages=10, n_refs=20, impact_factor=1.5, sc_codes=("A",),
                citations=None, readerships=None):
    if citations is None:
        citations = {0: 0, 1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 6: 6, 11: 9}
    if readerships is None:
        readerships = {0: 1, 1: 2, 2: 3, 3: 4, 4: 5, 5: 6, 6: 7}
    return PublicationRecord(
        id=rid, pub_year=pub_year, doc_type=doc_type, n_authors=n_authors,
        eng=eng, foreign=foreign, funding=funding, open=open_access,
        pages=pages, n_refs=n_refs, impact_factor=impact_factor,
        sc_codes=tuple(sc_codes),
        citations={int(k): float(v) for k, v in citations.items()},
        readerships={int(k): float(v) for k, v in readerships.items()},
    )


def make_corpus(*records):
    return Corpus.from_records(records)


def plain_matrix(X, y, names=None):
    """DesignMatrix around a bare numeric matrix, no SC dummies."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if names is None:
        names = tuple(f"x{j}" for j in range(X.shape[1]))
    return DesignMatrix(
        spec=None,
        row_ids=tuple(f"R{i}" for i in range(X.shape[0])),
        dense_names=tuple(names),
        dense=X,
        dummy_names=(),
        dummies=sp.csc_matrix((X.shape[0], 0)),
        response=y,
    )


def random_corpus(rng, n_records=30, sc_codes=("A", "B", "C"), years=(2010, 2011)):
    """Small random but valid corpus for oracle-style tests."""
    records = []
    for i in range(n_records):
        n_sc = 1 + int(rng.random() < 0.3)
        member = tuple(rng.choice(sc_codes, size=n_sc, replace=False))
        base_c = rng.integers(0, 6, size=8).cumsum()
        base_r = rng.integers(0, 5, size=7).cumsum()
        records.append(make_record(
            rid=f"P{i}",
            pub_year=int(rng.choice(years)),
            doc_type=str(rng.choice(["article", "review", "proceedings"])),
            n_authors=int(rng.integers(1, 9)),
            eng=bool(rng.random() < 0.3),
            foreign=bool(rng.random() < 0.4),
            funding=bool(rng.random() < 0.5),
            open_access=bool(rng.random() < 0.3),
            pages=int(rng.integers(1, 30)),
            n_refs=int(rng.integers(0, 80)),
            impact_factor=float(np.round(rng.random() * 4, 6)),
            sc_codes=member,
            citations={w: int(c) for w, c in zip((0, 1, 2, 3, 4, 5, 6, 11), base_c)},
            readerships={w: int(r) for w, r in zip(range(7), base_r)},
        ))
    return make_corpus(*records)

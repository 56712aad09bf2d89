"""Post-estimation diagnostics: residual histogram with kernel density,
normal Q-Q points, and nonparametric case bootstrap of coefficients.

Bootstrap sub-seeds derive deterministically from the master seed and the
resample index, so reports are bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse as sp

from .design import DesignMatrix
from .errors import DegenerateInputError, DomainError, UnderdeterminedError
from .ols import fit
from .special import inverse_normal_cdf

#: Points at which the kernel density curve is sampled.
KDE_CURVE_POINTS = 256

#: Histogram bins default to ceil(sqrt(n)) capped here.
MAX_DEFAULT_BINS = 100

#: Consecutive rank-deficient resamples tolerated before giving up.
MAX_BOOTSTRAP_RETRIES = 100


@dataclass(frozen=True, slots=True)
class Histogram:
    bin_left: np.ndarray
    bin_width: float
    counts: np.ndarray
    density_x: np.ndarray
    density_y: np.ndarray


def silverman_bandwidth(values: np.ndarray) -> float:
    """0.9 * min(sd, IQR/1.34) * n^(-1/5); zero spread terms are skipped
    so a positive-variance sample always gets a positive bandwidth."""
    n = values.size
    sd = float(np.std(values, ddof=1)) if n > 1 else 0.0
    q1, q3 = np.quantile(values, [0.25, 0.75])
    iqr = float(q3 - q1)
    spread = min((s for s in (sd, iqr / 1.34) if s > 0.0), default=0.0)
    if spread == 0.0:
        raise DegenerateInputError("all residuals equal; no bandwidth")
    return 0.9 * spread * n ** (-0.2)


def residual_histogram(residuals, bin_count: int | None = None) -> Histogram:
    """Equal-width bins spanning [min, max] (right-open except the last)
    plus a Gaussian-kernel density curve with Silverman bandwidth."""
    values = np.asarray(residuals, dtype=float)
    if values.size < 2:
        raise DegenerateInputError("need at least 2 residuals")
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        raise DegenerateInputError("all residuals equal")
    if bin_count is None:
        bin_count = min(math.ceil(math.sqrt(values.size)), MAX_DEFAULT_BINS)
    if bin_count < 1:
        raise DomainError(f"bin_count must be >= 1, got {bin_count}")
    counts, edges = np.histogram(values, bins=bin_count, range=(lo, hi))

    h = silverman_bandwidth(values)
    # extend past the data range so the curve carries its tail mass
    grid = np.linspace(lo - 3.0 * h, hi + 3.0 * h, KDE_CURVE_POINTS)
    z = (grid[:, None] - values[None, :]) / h
    density = np.exp(-0.5 * z * z).sum(axis=1) / (values.size * h * math.sqrt(2.0 * math.pi))

    return Histogram(
        bin_left=edges[:-1],
        bin_width=float(edges[1] - edges[0]),
        counts=counts,
        density_x=grid,
        density_y=density,
    )


def qq_points(residuals) -> np.ndarray:
    """(theoretical, sample) quantile pairs of standardized residuals.

    Sample residuals are standardized to mean 0 and sample sd 1 and
    sorted; the theoretical quantile at 1-based rank i is
    Phi^-1((i - 0.5)/n).
    """
    values = np.asarray(residuals, dtype=float)
    if values.size < 2:
        raise DegenerateInputError("need at least 2 residuals")
    sd = float(np.std(values, ddof=1))
    if sd == 0.0:
        raise DegenerateInputError("zero variance residuals")
    standardized = np.sort((values - values.mean()) / sd)
    n = values.size
    theoretical = np.array([
        inverse_normal_cdf((i - 0.5) / n) for i in range(1, n + 1)
    ])
    return np.column_stack([theoretical, standardized])


@dataclass(frozen=True, slots=True)
class CoefficientBootstrap:
    original_estimate: float
    bootstrap_mean: float
    bias: float
    std_error: float


@dataclass(frozen=True, slots=True)
class BootstrapReport:
    resamples: int
    seed: int
    retries: int
    per_coefficient: dict[str, CoefficientBootstrap]


def _densified(matrix: DesignMatrix) -> DesignMatrix:
    """One-time densification so each resample is a cheap row gather."""
    n = matrix.n_rows
    return DesignMatrix(
        spec=matrix.spec,
        row_ids=matrix.row_ids,
        dense_names=matrix.column_names,
        dense=matrix.to_dense(),
        dummy_names=(),
        dummies=sp.csc_matrix((n, 0)),
        response=np.asarray(matrix.response, dtype=float),
        dropped_empty=matrix.dropped_empty,
    )


def _one_resample(base: DesignMatrix, index, seed, expected_columns, n):
    """Fit one case resample; rank-deficient draws retry on the next
    sub-seed so every slot reports the same column set."""
    retries = 0
    for attempt in range(MAX_BOOTSTRAP_RETRIES):
        rng = np.random.default_rng(np.random.SeedSequence((seed, index, attempt)))
        rows = rng.integers(0, n, size=n)
        # row ids keep the original ordering; fitting never reads them
        resampled = replace(base, dense=base.dense[rows],
                            response=base.response[rows])
        try:
            refit = fit(resampled)
        except UnderdeterminedError:
            retries += 1
            continue
        if refit.column_order == expected_columns:
            return refit, retries
        retries += 1
    raise UnderdeterminedError(
        f"resample {index} stayed rank-deficient after {MAX_BOOTSTRAP_RETRIES} retries"
    )


def bootstrap(matrix: DesignMatrix, resamples: int, seed: int,
              workers: int = 1) -> BootstrapReport:
    """Nonparametric case bootstrap: draw n rows with replacement, refit,
    and report per-coefficient bias and standard error."""
    if resamples < 1:
        raise DomainError(f"resamples must be >= 1, got {resamples}")
    original = fit(matrix)
    columns = original.column_order
    n = matrix.n_rows
    base = _densified(matrix)

    def task(index):
        return _one_resample(base, index, seed, columns, n)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(task, range(resamples)))
    else:
        results = [task(index) for index in range(resamples)]

    estimates = np.array([
        [refit.coefficients[name] for name in columns] for refit, _ in results
    ])
    retries = sum(r for _, r in results)

    per_coefficient = {}
    for j, name in enumerate(columns):
        orig = original.coefficients[name]
        # work on deltas so a degenerate resample distribution gives bias
        # and spread of exactly zero
        deltas = estimates[:, j] - orig
        bias = float(deltas.mean())
        if resamples > 1:
            std_error = float(np.sqrt(
                np.sum((deltas - bias) ** 2) / (resamples - 1)
            ))
        else:
            std_error = 0.0
        per_coefficient[name] = CoefficientBootstrap(
            original_estimate=orig,
            bootstrap_mean=orig + bias,
            bias=bias,
            std_error=std_error,
        )
    return BootstrapReport(
        resamples=resamples,
        seed=seed,
        retries=retries,
        per_coefficient=per_coefficient,
    )

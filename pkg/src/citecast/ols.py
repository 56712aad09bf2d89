"""Ordinary least-squares engine with full inference outputs.

Solves via Householder QR with column pivoting; columns whose pivot falls
below 1e-10 of the largest pivot are dropped as aliased and excluded from
the degrees of freedom.  Tail probabilities come from the in-package
special functions, not a stats library, so the engine is self-contained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .design import INTERCEPT, DesignMatrix, ModelSpec
from .errors import (
    DomainError,
    MissingFeatureError,
    NonFiniteError,
    UnderdeterminedError,
)
from .special import f_tail, t_tail

#: Relative pivot threshold below which a column counts as linearly
#: dependent.
ALIAS_PIVOT_TOL = 1e-10

#: Default significance-star thresholds: *** p<0.01, ** p<0.05, * p<0.1.
STAR_THRESHOLDS = (0.01, 0.05, 0.1)


def stars(p_value: float, thresholds=STAR_THRESHOLDS) -> str:
    for n_stars, cut in zip((3, 2, 1), thresholds):
        if p_value < cut:
            return "*" * n_stars
    return ""


@dataclass(frozen=True, slots=True)
class FitResult:
    """Coefficients and diagnostics of one least-squares fit."""

    spec: ModelSpec | None
    column_order: tuple[str, ...]  # fitted columns, original display order
    coefficients: dict[str, float]
    std_errors: dict[str, float]
    t_values: dict[str, float]
    p_values: dict[str, float]
    residuals: np.ndarray
    rss: float
    r2: float
    adjusted_r2: float
    f_statistic: float
    p_value_f: float
    rse: float
    dof: int
    n: int
    aliased: tuple[str, ...]

    @property
    def has_intercept(self) -> bool:
        return INTERCEPT in self.coefficients

    def to_dict(self) -> dict:
        def clean(x):
            return x if math.isfinite(x) else repr(x)
        return {
            "spec": None if self.spec is None else {
                "family": self.spec.family,
                "window": self.spec.window,
                "baseline_sc": self.spec.baseline_sc,
                "include_intercept": self.spec.include_intercept,
            },
            "column_order": list(self.column_order),
            "coefficients": {k: clean(v) for k, v in self.coefficients.items()},
            "std_errors": {k: clean(v) for k, v in self.std_errors.items()},
            "t_values": {k: clean(v) for k, v in self.t_values.items()},
            "p_values": {k: clean(v) for k, v in self.p_values.items()},
            "rss": self.rss,
            "r2": self.r2,
            "adjusted_r2": self.adjusted_r2,
            "f_statistic": clean(self.f_statistic),
            "p_value_f": self.p_value_f,
            "rse": self.rse,
            "dof": self.dof,
            "n": self.n,
            "aliased": list(self.aliased),
        }

    @staticmethod
    def from_dict(obj: dict) -> "FitResult":
        def revive(x):
            return float(x) if isinstance(x, str) else x
        spec = None
        if obj.get("spec"):
            spec = ModelSpec(
                family=obj["spec"]["family"],
                window=int(obj["spec"]["window"]),
                baseline_sc=obj["spec"]["baseline_sc"],
                include_intercept=bool(obj["spec"]["include_intercept"]),
            )
        return FitResult(
            spec=spec,
            column_order=tuple(obj["column_order"]),
            coefficients={k: revive(v) for k, v in obj["coefficients"].items()},
            std_errors={k: revive(v) for k, v in obj["std_errors"].items()},
            t_values={k: revive(v) for k, v in obj["t_values"].items()},
            p_values={k: revive(v) for k, v in obj["p_values"].items()},
            residuals=np.array([]),
            rss=float(obj["rss"]),
            r2=float(obj["r2"]),
            adjusted_r2=float(obj["adjusted_r2"]),
            f_statistic=revive(obj["f_statistic"]),
            p_value_f=float(obj["p_value_f"]),
            rse=float(obj["rse"]),
            dof=int(obj["dof"]),
            n=int(obj["n"]),
            aliased=tuple(obj["aliased"]),
        )


def adjusted_r2(r2: float, n: int, p: int) -> float:
    """1 - (1 - r2)(n - 1)/(n - p - 1), with p the count of non-intercept
    fitted columns."""
    if n <= p + 1:
        raise DomainError(f"adjusted_r2 requires n > p + 1, got n={n}, p={p}")
    return 1.0 - (1.0 - r2) * (n - 1) / (n - p - 1)


def fit(matrix: DesignMatrix, pivot_tol: float = ALIAS_PIVOT_TOL) -> FitResult:
    """Least-squares fit of the design matrix's response on its columns."""
    X = matrix.to_dense()
    y = np.asarray(matrix.response, dtype=float)
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise NonFiniteError("design matrix or response contains non-finite values")
    n, k = X.shape
    names = matrix.column_names

    Q, R, piv = sla.qr(X, mode="economic", pivoting=True, check_finite=False)
    diag = np.abs(np.diag(R))
    largest = diag[0] if diag.size else 0.0
    if largest == 0.0:
        raise UnderdeterminedError("design matrix is identically zero")
    rank = int(np.sum(diag > pivot_tol * largest))
    if n <= rank:
        raise UnderdeterminedError(
            f"{n} rows cannot identify {rank} independent columns"
        )

    kept_piv = piv[:rank]
    detected = tuple(names[j] for j in sorted(piv[rank:]))
    aliased = matrix.dropped_empty + detected

    Q1 = Q[:, :rank]
    R1 = R[:rank, :rank]
    qt_y = Q1.T @ y
    beta_piv = sla.solve_triangular(R1, qt_y)
    fitted = Q1 @ qt_y
    residuals = y - fitted
    rss = float(residuals @ residuals)
    dof = n - rank
    rse = math.sqrt(rss / dof)

    # (X'X)^-1 diagonal from the triangular factor
    r1_inv = sla.solve_triangular(R1, np.eye(rank))
    var_unscaled = np.sum(r1_inv * r1_inv, axis=1)

    beta = dict(zip((names[j] for j in kept_piv), beta_piv))
    se = dict(zip((names[j] for j in kept_piv), rse * np.sqrt(var_unscaled)))
    aliased_set = set(aliased)
    column_order = tuple(name for name in names if name not in aliased_set)

    has_intercept = INTERCEPT in beta
    if has_intercept:
        centered = y - y.mean()
        tss = float(centered @ centered)
    else:
        tss = float(y @ y)
    if tss > 0.0:
        r2 = 1.0 - rss / tss
    else:
        r2 = 1.0  # constant response reproduced exactly

    p_nonint = rank - (1 if has_intercept else 0)
    if n > p_nonint + 1:
        adj = adjusted_r2(r2, n, p_nonint)
    else:
        adj = r2

    if p_nonint == 0:
        f_stat, p_f = 0.0, 1.0
    else:
        f_dof2 = dof
        if 1.0 - r2 <= 0.0:
            f_stat, p_f = math.inf, 0.0
        else:
            f_stat = (r2 / p_nonint) / ((1.0 - r2) / f_dof2)
            p_f = f_tail(f_stat, p_nonint, f_dof2)

    t_values, p_values = {}, {}
    for name in beta:
        if se[name] == 0.0:
            t = math.inf if beta[name] != 0.0 else 0.0
            p = 0.0 if beta[name] != 0.0 else 1.0
        else:
            t = beta[name] / se[name]
            p = t_tail(t, dof)
        t_values[name] = float(t)
        p_values[name] = float(p)

    return FitResult(
        spec=matrix.spec,
        column_order=column_order,
        coefficients={name: float(beta[name]) for name in column_order},
        std_errors={name: float(se[name]) for name in column_order},
        t_values={name: t_values[name] for name in column_order},
        p_values={name: p_values[name] for name in column_order},
        residuals=residuals,
        rss=rss,
        r2=float(r2),
        adjusted_r2=float(adj),
        f_statistic=float(f_stat),
        p_value_f=float(p_f),
        rse=float(rse),
        dof=dof,
        n=n,
        aliased=aliased,
    )


def predict(fit_result: FitResult, features: dict[str, float]) -> tuple[float, float]:
    """Score one feature vector with a fitted model.

    Returns (log-scale prediction, back-transformed 10^yhat - 1 floored
    at 0).  Every non-intercept fitted column must be supplied; aliased
    columns are ignored.
    """
    missing = [
        name for name in fit_result.column_order
        if name != INTERCEPT and name not in features
    ]
    if missing:
        raise MissingFeatureError(missing)
    yhat = 0.0
    for name in fit_result.column_order:
        value = 1.0 if name == INTERCEPT else float(features[name])
        yhat += fit_result.coefficients[name] * value
    back = max(10.0 ** yhat - 1.0, 0.0)
    return yhat, back

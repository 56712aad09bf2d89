"""Full-experiment orchestration: 21 fits, adjusted-R² curves, fourteen
nested ANOVA comparisons, and SC-dummy coefficient distributions.

All fits run on the identical row set, so residual sums of squares nest
exactly; the comparison F statistic divides the per-added-column RSS drop
by the full model's RSS per denominator degree of freedom, with
n - p_additional - 1 denominator df by default and the classical
n - p_full variant behind a flag.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .corpus import PREDICTOR_WINDOWS, Corpus
from .design import DUMMY_PREFIX, FAMILIES, ModelSpec, build_matrix
from .errors import CitecastError, DomainError, NestingViolationError, NoDummiesError
from .ols import FitResult, fit
from .special import f_tail

#: Relative slack allowed before a restricted RSS below the full RSS is
#: treated as a broken nesting.
NESTING_RTOL = 1e-9

ANOVA_VARIANTS = ("as_printed", "classical")

COMPARISON_PAIRS = ("full_vs_reduced", "full_vs_completely_reduced")
_PAIR_RESTRICTED = {
    "full_vs_reduced": "reduced",
    "full_vs_completely_reduced": "completely_reduced",
}


class SuiteFitError(CitecastError):
    """A fit inside the suite failed; names the offending (family, t)."""

    def __init__(self, family, window, cause):
        self.family, self.window = family, window
        super().__init__(f"fit failed for (family={family}, t={window}): {cause}")


@dataclass(frozen=True, slots=True)
class ComparisonReport:
    """Nested-model ANOVA for one (pair, window)."""

    window: int
    pair: str
    rss_full: float
    rss_restricted: float
    p_additional: int
    n: int
    f_value: float
    p_value: float


@dataclass(frozen=True, slots=True)
class ScDummySummary:
    """Distribution summary of non-aliased SC-dummy coefficients."""

    mean: float
    median: float
    q1: float
    q3: float
    share_positive: float
    count: int


@dataclass(frozen=True, slots=True)
class SuiteResult:
    fits: dict[tuple[str, int], FitResult]
    r2_curve: dict[str, list[float]]
    comparisons: list[ComparisonReport]
    sc_distributions: dict[int, ScDummySummary]


def anova_f(rss_restricted: float, rss_full: float, p_additional: int, n: int,
            variant: str = "as_printed", p_full: int | None = None):
    """Nested-comparison F statistic and upper-tail p-value.

    `variant` "as_printed" uses denominator df n - p_additional - 1;
    "classical" uses n - p_full and requires `p_full`, the number of
    fitted columns in the full model.
    """
    if variant not in ANOVA_VARIANTS:
        raise DomainError(f"unknown anova variant {variant!r}")
    if rss_full < 0 or rss_restricted < 0:
        raise DomainError("residual sums of squares must be nonnegative")
    if rss_restricted < rss_full:
        slack = NESTING_RTOL * max(rss_full, 1.0)
        if rss_full - rss_restricted > slack:
            raise NestingViolationError(
                f"rss_restricted={rss_restricted} < rss_full={rss_full} "
                "beyond tolerance; models are not nested on the same rows"
            )
        rss_restricted = rss_full
    if p_additional < 1:
        raise DomainError(f"p_additional must be >= 1, got {p_additional}")
    if variant == "classical":
        if p_full is None:
            raise DomainError("classical variant requires p_full")
        dof2 = n - p_full
    else:
        dof2 = n - p_additional - 1
    if dof2 < 1:
        raise DomainError(f"nonpositive denominator df ({dof2})")
    if rss_full == 0.0:
        if rss_restricted == 0.0:
            return 0.0, 1.0
        return float("inf"), 0.0
    f_value = ((rss_restricted - rss_full) / p_additional) / (rss_full / dof2)
    return float(f_value), f_tail(f_value, p_additional, dof2)


def sc_coefficient_summary(fit_result: FitResult) -> ScDummySummary:
    """Mean, median, quartiles (linear interpolation between order
    statistics), and positive share over non-aliased SC-dummy
    coefficients."""
    values = np.array([
        fit_result.coefficients[name]
        for name in fit_result.column_order
        if name.startswith(DUMMY_PREFIX)
    ])
    if values.size == 0:
        raise NoDummiesError("fit has no SC-dummy coefficients")
    return ScDummySummary(
        mean=float(values.mean()),
        median=float(np.quantile(values, 0.5)),
        q1=float(np.quantile(values, 0.25)),
        q3=float(np.quantile(values, 0.75)),
        share_positive=float(np.mean(values > 0.0)),
        count=int(values.size),
    )


def _fit_one(corpus, measures, spec):
    try:
        return fit(build_matrix(corpus, measures, spec))
    except CitecastError as exc:
        raise SuiteFitError(spec.family, spec.window, exc) from exc


def run_suite(corpus: Corpus, measures, baseline_sc: str,
              include_intercept: bool = True, workers: int = 1,
              anova_variant: str = "as_printed") -> SuiteResult:
    """Fit every (family, window) pair and assemble curves, the fourteen
    ANOVA comparisons, and per-window SC-dummy summaries."""
    keys = [(family, t) for family in FAMILIES for t in PREDICTOR_WINDOWS]
    specs = {
        key: ModelSpec(family=key[0], window=key[1], baseline_sc=baseline_sc,
                       include_intercept=include_intercept)
        for key in keys
    }
    fits: dict[tuple[str, int], FitResult] = {}
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {
                key: pool.submit(_fit_one, corpus, measures, specs[key])
                for key in keys
            }
            for key in keys:
                fits[key] = futures[key].result()
    else:
        for key in keys:
            fits[key] = _fit_one(corpus, measures, specs[key])

    r2_curve = {
        family: [fits[(family, t)].adjusted_r2 for t in PREDICTOR_WINDOWS]
        for family in FAMILIES
    }

    comparisons = []
    for t in PREDICTOR_WINDOWS:
        full_fit = fits[("full", t)]
        p_full = len(full_fit.column_order)
        for pair in COMPARISON_PAIRS:
            restricted_fit = fits[(_PAIR_RESTRICTED[pair], t)]
            p_additional = p_full - len(restricted_fit.column_order)
            f_value, p_value = anova_f(
                restricted_fit.rss, full_fit.rss, p_additional, full_fit.n,
                variant=anova_variant, p_full=p_full,
            )
            comparisons.append(ComparisonReport(
                window=t,
                pair=pair,
                rss_full=full_fit.rss,
                rss_restricted=restricted_fit.rss,
                p_additional=p_additional,
                n=full_fit.n,
                f_value=f_value,
                p_value=p_value,
            ))

    sc_distributions = {
        t: sc_coefficient_summary(fits[("full", t)]) for t in PREDICTOR_WINDOWS
    }
    return SuiteResult(
        fits=fits,
        r2_curve=r2_curve,
        comparisons=comparisons,
        sc_distributions=sc_distributions,
    )

"""Seeded synthetic-corpus generator.

The data-generating process is a latent-quality mixed Poisson model: each
publication draws a lognormal quality, each subject category a lognormal
field scale, and cumulative citation counts accumulate Poisson increments
whose yearly rates follow an aging profile.  Readership shares the
quality signal through an independent noise channel and saturates
earlier, so early readership carries information that early citations do
not yet have.  Nothing here is presented as the mechanism behind real
corpora; it is a controlled test scaffold whose moments and qualitative
regression behavior can be calibrated.

A second mode plants an exact linear model on the log scale
(`ground_truth`): regression variables are generated as real-valued
trajectories, the response window is computed from the configured
coefficients, and fitting against unit baselines recovers them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .corpus import (
    CITATION_WINDOWS,
    PREDICTOR_WINDOWS,
    READERSHIP_WINDOWS,
    RESPONSE_WINDOW,
    Corpus,
    PublicationRecord,
)
from .design import FAMILIES, INTERCEPT, ModelSpec, dummy_name
from .errors import ConfigError

#: Yearly indices over which citation increments accrue.
_CITE_YEARS = tuple(range(0, RESPONSE_WINDOW + 1))


@dataclass(frozen=True, slots=True)
class Tolerance:
    value: float
    kind: str = "abs"  # "abs" or "rel"

    def passes(self, target: float, achieved: float) -> bool:
        if self.kind == "rel":
            return abs(achieved - target) <= self.value * abs(target)
        return abs(achieved - target) <= self.value


@dataclass(frozen=True, slots=True)
class VariableTarget:
    """Calibration target for one variable; dummies carry only a mean
    (their share)."""

    mean: float
    mean_tol: Tolerance
    sd: float | None = None
    sd_tol: Tolerance | None = None


def _default_targets() -> dict[str, VariableTarget]:
    # Moment targets for the covariates the generator controls directly.
    # Trajectory variables are emergent, not targeted.
    return {
        "AUTH": VariableTarget(13.849, Tolerance(1.0, "abs"), 127.614,
                               Tolerance(0.35, "rel")),
        "PAGES": VariableTarget(9.866, Tolerance(0.10, "rel"), 8.176,
                                Tolerance(0.25, "rel")),
        "IF": VariableTarget(1.262, Tolerance(0.10, "rel"), 1.139,
                             Tolerance(0.25, "rel")),
        "REFER": VariableTarget(38.465, Tolerance(0.15, "rel"), 36.365,
                                Tolerance(0.30, "rel")),
        "D_ENG": VariableTarget(0.219, Tolerance(0.02, "abs")),
        "D_FOREIGN": VariableTarget(0.440, Tolerance(0.02, "abs")),
        "D_FUNDING": VariableTarget(0.490, Tolerance(0.02, "abs")),
        "D_OPEN": VariableTarget(0.337, Tolerance(0.02, "abs")),
        "D_ART": VariableTarget(0.838, Tolerance(0.02, "abs")),
        "D_REW": VariableTarget(0.061, Tolerance(0.02, "abs")),
    }


@dataclass(frozen=True, slots=True)
class TrajectoryModel:
    """Latent citation/readership process parameters."""

    quality_sigma: float = 1.0      # lognormal sigma of latent quality
    field_sigma: float = 0.5        # lognormal sigma of per-SC rate scale
    citation_scale: float = 1.6     # baseline yearly citation rate
    growth_offset: float = 0.4      # rate(s) = (s + offset) * exp(-s/tau)
    growth_tau: float = 4.0
    readership_scale: float = 5.0
    read_offset: float = 0.8
    read_tau: float = 1.8
    readership_noise: float = 0.35  # sd of log link between quality and reading
    review_boost: float = 1.5       # reviews attract more citations
    open_boost: float = 0.15        # open access lifts early-year rates
    funding_boost: float = 0.08
    early_years: int = 3            # boosts apply to years < early_years
    if_quality_corr: float = 0.65   # journal IF tracks latent quality

    def citation_profile(self) -> np.ndarray:
        s = np.arange(len(_CITE_YEARS), dtype=float)
        return (s + self.growth_offset) * np.exp(-s / self.growth_tau)

    def readership_profile(self) -> np.ndarray:
        s = np.arange(len(READERSHIP_WINDOWS), dtype=float)
        return (s + self.read_offset) * np.exp(-s / self.read_tau)


@dataclass(frozen=True, slots=True)
class GroundTruth:
    """Exact linear model on the log scale for parameter-recovery runs."""

    family: str
    window: int
    beta: dict[str, float]
    noise_sd: float = 0.0
    window_noise: float = 0.25  # jitter of per-year predictor increments

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown ground-truth family {self.family!r}")
        if self.window not in PREDICTOR_WINDOWS:
            raise ConfigError(f"ground-truth window must be in 0..6, got {self.window}")
        if self.noise_sd < 0:
            raise ConfigError("noise_sd must be >= 0")


@dataclass(frozen=True, slots=True)
class GeneratorConfig:
    n_records: int = 50_000
    n_scs: int = 248
    seed: int = 42
    years: tuple[int, ...] = (2010, 2011, 2012)
    sc_power: float = 0.7           # SC sizes follow j^(-sc_power)
    multi_sc_share: float = 0.05    # fraction assigned to a second SC
    moment_targets: dict[str, VariableTarget] = field(default_factory=_default_targets)
    trajectory: TrajectoryModel = field(default_factory=TrajectoryModel)
    ground_truth: GroundTruth | None = None

    def validate(self) -> None:
        if self.n_scs < 2:
            raise ConfigError("n_scs must be >= 2")
        if self.n_records < self.n_scs:
            raise ConfigError("n_records must be >= n_scs")
        if not self.years:
            raise ConfigError("years must be nonempty")
        if not (0.0 <= self.multi_sc_share <= 1.0):
            raise ConfigError("multi_sc_share must be in [0, 1]")
        for name, target in self.moment_targets.items():
            if target.sd is not None and target.sd < 0:
                raise ConfigError(f"negative sd target for {name}")
            if name.startswith("D_") and not (0.0 <= target.mean <= 1.0):
                raise ConfigError(f"share target for {name} outside [0, 1]")

    def sc_codes(self) -> tuple[str, ...]:
        width = len(str(self.n_scs))
        return tuple(f"SC{j:0{width}d}" for j in range(1, self.n_scs + 1))


def _lognormal_params(mean: float, sd: float) -> tuple[float, float]:
    """(mu, sigma) of the lognormal with the requested mean and sd."""
    if mean <= 0:
        raise ConfigError(f"lognormal mean target must be positive, got {mean}")
    sigma2 = math.log(1.0 + (sd / mean) ** 2)
    return math.log(mean) - 0.5 * sigma2, math.sqrt(sigma2)


# Hyper-authorship component of the AUTH-style mixture: a rare block of
# very large collaborations with bounded support, so extreme sd targets
# are reachable without an unstable unbounded tail.
_HYPER_LO, _HYPER_HI = 500.0, 3200.0
_BULK_SIGMA = 1.1


def _heavy_count_draw(rng: np.random.Generator, n: int, mean: float, sd: float) -> np.ndarray:
    """Positive draws matching (mean, sd); targets with sd far above the
    mean use a lognormal bulk plus a rare bounded hyper block."""
    if sd <= 1.5 * mean:
        mu, sigma = _lognormal_params(mean, sd)
        return rng.lognormal(mu, sigma, n)
    h_mean = 0.5 * (_HYPER_LO + _HYPER_HI)
    h_second = (_HYPER_HI - _HYPER_LO) ** 2 / 12.0 + h_mean ** 2
    target_second = sd * sd + mean * mean
    bulk_factor = math.exp(_BULK_SIGMA ** 2)

    def excess(share):
        bulk_mean = (mean - share * h_mean) / (1.0 - share)
        return ((1.0 - share) * bulk_mean ** 2 * bulk_factor
                + share * h_second - target_second)

    lo, hi = 0.0, min(0.5, mean / h_mean * 0.99)
    if excess(lo) >= 0.0 or excess(hi) <= 0.0:
        mu, sigma = _lognormal_params(mean, sd)
        return rng.lognormal(mu, sigma, n)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if excess(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    share = 0.5 * (lo + hi)
    bulk_mean = (mean - share * h_mean) / (1.0 - share)
    mu, _ = _lognormal_params(bulk_mean, bulk_mean * math.sqrt(bulk_factor - 1.0))
    values = rng.lognormal(mu, _BULK_SIGMA, n)
    hyper = rng.random(n) < share
    values[hyper] = rng.uniform(_HYPER_LO, _HYPER_HI, int(hyper.sum()))
    return values


def _share(config: GeneratorConfig, name: str) -> float:
    return config.moment_targets[name].mean


def _draw_covariates(config: GeneratorConfig, rng: np.random.Generator):
    """Metadata covariates: SC memberships, year, document type, dummies,
    author/page/reference counts, latent quality, and journal IF."""
    n, J = config.n_records, config.n_scs
    targets = config.moment_targets

    weights = np.arange(1, J + 1, dtype=float) ** (-config.sc_power)
    probs = weights / weights.sum()
    primary = rng.choice(J, size=n, p=probs)
    multi = rng.random(n) < config.multi_sc_share
    # second membership uniform over the other SCs
    second = (primary + 1 + rng.integers(0, J - 1, size=n)) % J

    year_idx = rng.integers(0, len(config.years), size=n)

    u = rng.random(n)
    p_art, p_rew = _share(config, "D_ART"), _share(config, "D_REW")
    doc_type = np.where(u < p_art, "article",
                        np.where(u < p_art + p_rew, "review", "proceedings"))

    p_foreign = _share(config, "D_FOREIGN")
    foreign = rng.random(n) < p_foreign
    # native-English authorship is more likely under international
    # collaboration; marginal share stays on target
    p_eng = _share(config, "D_ENG")
    p_eng_f = min(0.95, 2.2 * p_eng) if p_foreign > 0 else p_eng
    p_eng_nf = (p_eng - p_foreign * p_eng_f) / (1.0 - p_foreign) if p_foreign < 1 else p_eng
    p_eng_nf = min(max(p_eng_nf, 0.0), 1.0)
    eng = np.where(foreign, rng.random(n) < p_eng_f, rng.random(n) < p_eng_nf)

    funding = rng.random(n) < _share(config, "D_FUNDING")
    open_access = rng.random(n) < _share(config, "D_OPEN")

    auth = _heavy_count_draw(rng, n, targets["AUTH"].mean, targets["AUTH"].sd)
    n_authors = np.maximum(1, np.round(auth)).astype(int)
    pages_draw = _heavy_count_draw(rng, n, targets["PAGES"].mean, targets["PAGES"].sd)
    pages = np.maximum(1, np.round(pages_draw)).astype(int)
    refer = _heavy_count_draw(rng, n, targets["REFER"].mean, targets["REFER"].sd)
    refer = np.where(doc_type == "review", refer * 1.8, refer)
    n_refs = np.maximum(0, np.round(refer)).astype(int)

    z_quality = rng.standard_normal(n)
    sigma_q = config.trajectory.quality_sigma
    quality = np.exp(sigma_q * z_quality - 0.5 * sigma_q ** 2)

    # journal IF: exact lognormal target moments, correlated with quality
    mu_if, sigma_if = _lognormal_params(targets["IF"].mean, targets["IF"].sd)
    rho = config.trajectory.if_quality_corr
    z_if = rho * z_quality + math.sqrt(1.0 - rho * rho) * rng.standard_normal(n)
    impact_factor = np.exp(mu_if + sigma_if * z_if)

    codes = config.sc_codes()
    sc_lists = [
        (codes[p], codes[s]) if m and s != p else (codes[p],)
        for p, s, m in zip(primary, second, multi)
    ]
    field_scale = np.exp(
        config.trajectory.field_sigma * rng.standard_normal(J)
        - 0.5 * config.trajectory.field_sigma ** 2
    )
    pub_field = np.array([
        field_scale[[p, s]].mean() if m and s != p else field_scale[p]
        for p, s, m in zip(primary, second, multi)
    ])

    return {
        "sc_lists": sc_lists,
        "pub_year": np.array(config.years)[year_idx],
        "doc_type": doc_type,
        "eng": eng,
        "foreign": foreign,
        "funding": funding,
        "open": open_access,
        "n_authors": n_authors,
        "pages": pages,
        "n_refs": n_refs,
        "impact_factor": impact_factor,
        "quality": quality,
        "field": pub_field,
    }


def _calibrated_trajectories(config: GeneratorConfig, cov, rng):
    """Cumulative Poisson citation and readership counts."""
    n = config.n_records
    traj = config.trajectory
    profile = traj.citation_profile()

    lam = traj.citation_scale * cov["quality"] * cov["field"]
    lam = lam * np.where(cov["doc_type"] == "review", traj.review_boost, 1.0)
    boost = 1.0 + traj.open_boost * cov["open"] + traj.funding_boost * cov["funding"]
    rates = lam[:, None] * profile[None, :]
    rates[:, :traj.early_years] *= boost[:, None]
    cite_cum = np.cumsum(rng.poisson(rates), axis=1)

    read_profile = traj.readership_profile()
    q_read = cov["quality"] * np.exp(
        traj.readership_noise * rng.standard_normal(n)
        - 0.5 * traj.readership_noise ** 2
    )
    read_rates = traj.readership_scale * (q_read * cov["field"])[:, None] * read_profile[None, :]
    read_cum = np.cumsum(rng.poisson(read_rates), axis=1)

    citations = [
        {w: float(cite_cum[i, w]) for w in CITATION_WINDOWS} for i in range(n)
    ]
    readerships = [
        {w: float(read_cum[i, w]) for w in READERSHIP_WINDOWS} for i in range(n)
    ]
    return citations, readerships


def _ground_truth_trajectories(config: GeneratorConfig, cov, rng):
    """Real-valued trajectories realizing y = X beta (+ noise) exactly on
    the log scale, against unit normalization baselines."""
    gt = config.ground_truth
    n = config.n_records
    traj = config.trajectory

    profile = traj.citation_profile()[: len(PREDICTOR_WINDOWS)]
    jitter = np.exp(gt.window_noise * rng.standard_normal((n, len(PREDICTOR_WINDOWS))))
    cite_inc = cov["quality"][:, None] * profile[None, :] * jitter
    cite_cum = np.cumsum(cite_inc, axis=1)

    read_profile = traj.readership_profile()
    read_jitter = np.exp(gt.window_noise * rng.standard_normal((n, len(READERSHIP_WINDOWS))))
    q_read = cov["quality"] * np.exp(
        traj.readership_noise * rng.standard_normal(n)
        - 0.5 * traj.readership_noise ** 2
    )
    read_inc = traj.readership_scale * q_read[:, None] * read_profile[None, :] * read_jitter
    read_cum = np.cumsum(read_inc, axis=1)

    t = gt.window
    spec = ModelSpec(family=gt.family, window=t, baseline_sc=config.sc_codes()[0])
    columns: dict[str, np.ndarray] = {
        INTERCEPT: np.ones(n),
        f"L_IMPACT_t{t}": np.log10(1.0 + cite_cum[:, t]),
        f"L_READ_t{t}": np.log10(1.0 + read_cum[:, t]),
        "L_AUTH": np.log10(1.0 + cov["n_authors"]),
        "L_PAGES": np.log10(1.0 + cov["pages"]),
        "L_IF": np.log10(1.0 + cov["impact_factor"]),
        "L_REFER": np.log10(1.0 + cov["n_refs"]),
        "D_ENG": cov["eng"].astype(float),
        "D_FOREIGN": cov["foreign"].astype(float),
        "D_FUNDING": cov["funding"].astype(float),
        "D_OPEN": cov["open"].astype(float),
        "D_ART": (cov["doc_type"] == "article").astype(float),
        "D_REW": (cov["doc_type"] == "review").astype(float),
    }
    allowed = set(columns) | {
        dummy_name(code) for code in config.sc_codes()
    }
    unknown = sorted(set(gt.beta) - allowed)
    if unknown:
        raise ConfigError(f"ground-truth beta names unknown columns: {unknown}")
    usable = {INTERCEPT, *spec.substantive_regressors}
    out_of_family = sorted(
        name for name in gt.beta
        if name in columns and name not in usable
    )
    if out_of_family:
        raise ConfigError(
            f"ground-truth beta sets columns outside the {gt.family} family "
            f"at window {t}: {out_of_family}"
        )

    y = np.zeros(n)
    for name, value in gt.beta.items():
        if name in columns:
            y += value * columns[name]
    dummy_beta = {
        name: value for name, value in gt.beta.items() if name not in columns
    }
    if dummy_beta:
        for i, scs in enumerate(cov["sc_lists"]):
            y[i] += sum(dummy_beta.get(dummy_name(code), 0.0) for code in scs)
    if gt.noise_sd > 0:
        y += gt.noise_sd * rng.standard_normal(n)

    c_response = 10.0 ** y - 1.0
    violations = int(np.sum(c_response < cite_cum[:, len(PREDICTOR_WINDOWS) - 1]))
    if violations:
        raise ConfigError(
            f"ground-truth model breaks trajectory cumulativity on "
            f"{violations} record(s); raise the intercept or shrink noise"
        )

    citations = []
    readerships = []
    for i in range(n):
        traj_c = {w: float(cite_cum[i, w]) for w in PREDICTOR_WINDOWS}
        traj_c[RESPONSE_WINDOW] = float(c_response[i])
        citations.append(traj_c)
        readerships.append({w: float(read_cum[i, w]) for w in READERSHIP_WINDOWS})
    return citations, readerships


def generate(config: GeneratorConfig) -> Corpus:
    """Generate a corpus; deterministic under config.seed."""
    config.validate()
    rng = np.random.default_rng(np.random.SeedSequence(config.seed))
    cov = _draw_covariates(config, rng)
    if config.ground_truth is None:
        citations, readerships = _calibrated_trajectories(config, cov, rng)
    else:
        citations, readerships = _ground_truth_trajectories(config, cov, rng)

    width = len(str(config.n_records))
    records = [
        PublicationRecord(
            id=f"P{i + 1:0{width}d}",
            pub_year=int(cov["pub_year"][i]),
            doc_type=str(cov["doc_type"][i]),
            n_authors=int(cov["n_authors"][i]),
            eng=bool(cov["eng"][i]),
            foreign=bool(cov["foreign"][i]),
            funding=bool(cov["funding"][i]),
            open=bool(cov["open"][i]),
            pages=int(cov["pages"][i]),
            n_refs=int(cov["n_refs"][i]),
            impact_factor=float(cov["impact_factor"][i]),
            sc_codes=cov["sc_lists"][i],
            citations=citations[i],
            readerships=readerships[i],
        )
        for i in range(config.n_records)
    ]
    return Corpus.from_records(records)


@dataclass(frozen=True, slots=True)
class CalibrationRow:
    variable: str
    metric: str  # "mean" or "sd"
    target: float
    achieved: float
    tolerance: float
    tolerance_kind: str
    passed: bool


@dataclass(frozen=True, slots=True)
class CalibrationReport:
    rows: list[CalibrationRow]

    @property
    def all_passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def pass_fraction(self) -> float:
        return sum(row.passed for row in self.rows) / len(self.rows)


def _achieved_values(corpus: Corpus) -> dict[str, np.ndarray]:
    records = list(corpus)
    return {
        "AUTH": np.array([r.n_authors for r in records], dtype=float),
        "PAGES": np.array([r.pages for r in records], dtype=float),
        "IF": np.array([r.impact_factor for r in records], dtype=float),
        "REFER": np.array([r.n_refs for r in records], dtype=float),
        "D_ENG": np.array([r.eng for r in records], dtype=float),
        "D_FOREIGN": np.array([r.foreign for r in records], dtype=float),
        "D_FUNDING": np.array([r.funding for r in records], dtype=float),
        "D_OPEN": np.array([r.open for r in records], dtype=float),
        "D_ART": np.array([r.doc_type == "article" for r in records], dtype=float),
        "D_REW": np.array([r.doc_type == "review" for r in records], dtype=float),
    }


def calibration_report(corpus: Corpus, config: GeneratorConfig) -> CalibrationReport:
    """Compare sample moments of a generated corpus to the configured
    targets."""
    values = _achieved_values(corpus)
    rows = []
    for name, target in config.moment_targets.items():
        sample = values[name]
        achieved_mean = float(sample.mean())
        rows.append(CalibrationRow(
            variable=name,
            metric="mean",
            target=target.mean,
            achieved=achieved_mean,
            tolerance=target.mean_tol.value,
            tolerance_kind=target.mean_tol.kind,
            passed=target.mean_tol.passes(target.mean, achieved_mean),
        ))
        if target.sd is not None and target.sd_tol is not None:
            achieved_sd = float(sample.std(ddof=1)) if sample.size > 1 else 0.0
            rows.append(CalibrationRow(
                variable=name,
                metric="sd",
                target=target.sd,
                achieved=achieved_sd,
                tolerance=target.sd_tol.value,
                tolerance_kind=target.sd_tol.kind,
                passed=target.sd_tol.passes(target.sd, achieved_sd),
            ))
    return CalibrationReport(rows=rows)


def _target_to_dict(target: VariableTarget) -> dict:
    out = {"mean": target.mean,
           "mean_tol": {"value": target.mean_tol.value, "kind": target.mean_tol.kind}}
    if target.sd is not None:
        out["sd"] = target.sd
    if target.sd_tol is not None:
        out["sd_tol"] = {"value": target.sd_tol.value, "kind": target.sd_tol.kind}
    return out


def _target_from_dict(obj: dict) -> VariableTarget:
    return VariableTarget(
        mean=float(obj["mean"]),
        mean_tol=Tolerance(float(obj["mean_tol"]["value"]), obj["mean_tol"]["kind"]),
        sd=float(obj["sd"]) if "sd" in obj else None,
        sd_tol=(Tolerance(float(obj["sd_tol"]["value"]), obj["sd_tol"]["kind"])
                if "sd_tol" in obj else None),
    )


def config_to_dict(config: GeneratorConfig) -> dict:
    traj = config.trajectory
    out = {
        "n_records": config.n_records,
        "n_scs": config.n_scs,
        "seed": config.seed,
        "years": list(config.years),
        "sc_power": config.sc_power,
        "multi_sc_share": config.multi_sc_share,
        "moment_targets": {
            name: _target_to_dict(t) for name, t in config.moment_targets.items()
        },
        "trajectory": {
            "quality_sigma": traj.quality_sigma,
            "field_sigma": traj.field_sigma,
            "citation_scale": traj.citation_scale,
            "growth_offset": traj.growth_offset,
            "growth_tau": traj.growth_tau,
            "readership_scale": traj.readership_scale,
            "read_offset": traj.read_offset,
            "read_tau": traj.read_tau,
            "readership_noise": traj.readership_noise,
            "review_boost": traj.review_boost,
            "open_boost": traj.open_boost,
            "funding_boost": traj.funding_boost,
            "early_years": traj.early_years,
            "if_quality_corr": traj.if_quality_corr,
        },
        "ground_truth": None,
    }
    if config.ground_truth is not None:
        gt = config.ground_truth
        out["ground_truth"] = {
            "family": gt.family,
            "window": gt.window,
            "beta": dict(gt.beta),
            "noise_sd": gt.noise_sd,
            "window_noise": gt.window_noise,
        }
    return out


def config_from_dict(obj: dict) -> GeneratorConfig:
    base = GeneratorConfig()
    targets = dict(base.moment_targets)
    for name, raw in obj.get("moment_targets", {}).items():
        targets[name] = _target_from_dict(raw)
    traj = base.trajectory
    if "trajectory" in obj:
        traj = replace(traj, **obj["trajectory"])
    ground_truth = None
    if obj.get("ground_truth"):
        raw = obj["ground_truth"]
        ground_truth = GroundTruth(
            family=raw["family"],
            window=int(raw["window"]),
            beta={k: float(v) for k, v in raw["beta"].items()},
            noise_sd=float(raw.get("noise_sd", 0.0)),
            window_noise=float(raw.get("window_noise", 0.25)),
        )
    return GeneratorConfig(
        n_records=int(obj.get("n_records", base.n_records)),
        n_scs=int(obj.get("n_scs", base.n_scs)),
        seed=int(obj.get("seed", base.seed)),
        years=tuple(obj.get("years", base.years)),
        sc_power=float(obj.get("sc_power", base.sc_power)),
        multi_sc_share=float(obj.get("multi_sc_share", base.multi_sc_share)),
        moment_targets=targets,
        trajectory=traj,
        ground_truth=ground_truth,
    )


def load_config(path) -> GeneratorConfig:
    with Path(path).open(encoding="utf-8") as handle:
        return config_from_dict(json.load(handle))

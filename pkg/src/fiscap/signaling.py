"""Dynamic signaling game: provision gain, morality thresholds, PBE classification.

Off-path beliefs follow a fixed assignment: an unexpected g=1 is read as the
high type (p = alpha_H), an unexpected g=0 as the low type (p = alpha_L).
The g=0 tax base does not depend on beliefs (phi(0) = s), so only the belief
attached to provision ever moves a payoff.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum

from .core import (
    KappaInfeasible,
    RegionMismatch,
    ValidatedModel,
    require_phi_feasible,
    theta as theta_of,
)
from .fiscal import laffer_peak_revenue


class Regime(str, Enum):
    WEAK_HIGH = "weak_high"
    STRONG_HIGH = "strong_high"


class EquilibriumTag(str, Enum):
    POOLING_RENTS = "pooling_rents"
    SEPARATION = "separation"
    POOLING_PROVISION = "pooling_provision"
    NO_PURE_EQUILIBRIUM = "no_pure_equilibrium"


class Strategy(str, Enum):
    SEPARATING = "separating"
    POOLING_RENTS = "pooling_rents"
    POOLING_PROVISION = "pooling_provision"


STRATEGY_OF_TAG = {
    EquilibriumTag.SEPARATION: Strategy.SEPARATING,
    EquilibriumTag.POOLING_RENTS: Strategy.POOLING_RENTS,
    EquilibriumTag.POOLING_PROVISION: Strategy.POOLING_PROVISION,
}


@dataclass(frozen=True)
class ThresholdSet:
    kappa_min_H: float | None = None
    kappa_max_L: float | None = None
    kappa_pool: float | None = None
    kappa_H_min: float | None = None
    kappa_H_max: float | None = None
    alpha_bar: float | None = None

    def merged(self, other: ThresholdSet) -> ThresholdSet:
        return ThresholdSet(**{k: v if v is not None else getattr(other, k)
                               for k, v in asdict(self).items()})


@dataclass(frozen=True)
class EquilibriumClass:
    tag: EquilibriumTag
    regime: Regime
    thresholds: ThresholdSet
    tax_base_g0: float | None
    tax_base_g1: float | None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "tag": self.tag.value,
            "regime": self.regime.value,
            "thresholds": asdict(self.thresholds),
            "tax_base_g0": self.tax_base_g0,
            "tax_base_g1": self.tax_base_g1,
            "diagnostics": dict(self.diagnostics),
        }


def provision_gain(model: ValidatedModel, alpha: float, p: float) -> float:
    """Delta(alpha | p): payoff of providing minus payoff of rents when citizens believe p."""
    require_phi_feasible(model.kappa, p)
    k = model.kappa
    return (model.w * model.c / 4.0) * (alpha / (1.0 - k * p) - model.theta / (1.0 - k * model.s))


def regime_of(alpha_L: float, alpha_H: float, sigma: float) -> Regime:
    th = theta_of(sigma)
    s = sigma * th
    if not alpha_L < s:
        raise RegionMismatch(f"two-state analysis needs alpha_L < s = {s:.6g}, got {alpha_L}")
    if s < alpha_H <= th:
        return Regime.WEAK_HIGH
    if alpha_H > th:
        return Regime.STRONG_HIGH
    raise RegionMismatch(f"alpha_H={alpha_H} must exceed s = {s:.6g}")


def _kappa_max_L(alpha_L, alpha_H, th, s):
    return (th - alpha_L) / (th * alpha_H - alpha_L * s)


def separation_thresholds(alpha_L: float, alpha_H: float, sigma: float) -> ThresholdSet:
    regime = regime_of(alpha_L, alpha_H, sigma)
    th = theta_of(sigma)
    s = sigma * th
    k_min = None
    if regime is Regime.WEAK_HIGH:
        k_min = (th - alpha_H) / (th * alpha_H * (1.0 - sigma))
    return ThresholdSet(kappa_min_H=k_min, kappa_max_L=_kappa_max_L(alpha_L, alpha_H, th, s))


def weak_high_thresholds(alpha_L: float, alpha_H: float, sigma: float) -> ThresholdSet:
    if regime_of(alpha_L, alpha_H, sigma) is not Regime.WEAK_HIGH:
        raise RegionMismatch(f"alpha_H={alpha_H} is above theta: not the weak-high ordering")
    return separation_thresholds(alpha_L, alpha_H, sigma)


def pooling_thresholds(alpha_L: float, alpha_H: float, rho: float, sigma: float) -> ThresholdSet:
    """Cutoffs for pooling at provision given the prior-mean belief alpha_bar.

    Weak-high: kappa_H_min is present only when alpha_H*sigma <= alpha_bar;
    its absence means pooling at provision is infeasible. Strong-high:
    kappa_H_max is present only when alpha_H*sigma > alpha_bar; otherwise the
    high type's pooling constraint never binds.
    """
    regime = regime_of(alpha_L, alpha_H, sigma)
    th = theta_of(sigma)
    a_bar = rho * alpha_H + (1.0 - rho) * alpha_L
    k_pool = (th - alpha_L) / (th * (a_bar - alpha_L * sigma))
    k_H_min = k_H_max = None
    gap = a_bar - alpha_H * sigma
    if regime is Regime.WEAK_HIGH:
        if gap > 0:
            k_H_min = (th - alpha_H) / (th * gap)
        elif gap == 0 and alpha_H == th:
            k_H_min = 0.0
    elif gap < 0:
        k_H_max = (alpha_H - th) / (th * -gap)
    return ThresholdSet(kappa_pool=k_pool, kappa_H_min=k_H_min, kappa_H_max=k_H_max, alpha_bar=a_bar)


def threshold_set(alpha_L: float, alpha_H: float, rho: float, sigma: float) -> ThresholdSet:
    return separation_thresholds(alpha_L, alpha_H, sigma).merged(
        pooling_thresholds(alpha_L, alpha_H, rho, sigma))


def incentive_gains(model: ValidatedModel, alpha_L: float, alpha_H: float, rho: float) -> dict:
    """Provision gains behind every incentive constraint in the three candidate profiles."""
    a_bar = rho * alpha_H + (1.0 - rho) * alpha_L
    return {
        "high_at_alpha_H": provision_gain(model, alpha_H, alpha_H),
        "low_at_alpha_H": provision_gain(model, alpha_L, alpha_H),
        "high_at_alpha_bar": provision_gain(model, alpha_H, a_bar),
        "low_at_alpha_bar": provision_gain(model, alpha_L, a_bar),
    }


def profile_constraints(tag: EquilibriumTag, gains: dict) -> dict[str, bool]:
    """IC satisfaction per type for a candidate profile, given provision gains.

    Weak/strict conventions follow the closed intervals of the case list:
    separation needs Delta_H >= 0 and Delta_L < 0, pooling at rents needs
    Delta_H < 0, pooling at provision needs both pooled gains >= 0.
    """
    if tag is EquilibriumTag.SEPARATION:
        return {"high": gains["high_at_alpha_H"] >= 0, "low": gains["low_at_alpha_H"] < 0}
    if tag is EquilibriumTag.POOLING_RENTS:
        return {"high": gains["high_at_alpha_H"] < 0, "low": gains["low_at_alpha_H"] < 0}
    if tag is EquilibriumTag.POOLING_PROVISION:
        return {"high": gains["high_at_alpha_bar"] >= 0, "low": gains["low_at_alpha_bar"] >= 0}
    raise ValueError(f"no pure profile for {tag}")


PURE_TAGS = (EquilibriumTag.POOLING_RENTS, EquilibriumTag.SEPARATION, EquilibriumTag.POOLING_PROVISION)


def tag_from_gains(gains: dict) -> EquilibriumTag:
    for tag in PURE_TAGS:
        if all(profile_constraints(tag, gains).values()):
            return tag
    return EquilibriumTag.NO_PURE_EQUILIBRIUM


def _threshold_tag(kappa: float, regime: Regime, th: ThresholdSet) -> EquilibriumTag:
    if regime is Regime.WEAK_HIGH:
        if kappa < th.kappa_min_H:
            return EquilibriumTag.POOLING_RENTS
        if kappa < th.kappa_max_L:
            return EquilibriumTag.SEPARATION
        if th.kappa_H_min is not None and kappa >= max(th.kappa_pool, th.kappa_H_min):
            return EquilibriumTag.POOLING_PROVISION
        return EquilibriumTag.NO_PURE_EQUILIBRIUM
    if kappa < th.kappa_max_L:
        return EquilibriumTag.SEPARATION
    if kappa >= th.kappa_pool and (th.kappa_H_max is None or kappa <= th.kappa_H_max):
        return EquilibriumTag.POOLING_PROVISION
    return EquilibriumTag.NO_PURE_EQUILIBRIUM


def tax_bases(model: ValidatedModel, tag: EquilibriumTag, alpha_L: float, alpha_H: float,
              rho: float) -> tuple[float | None, float | None]:
    """Tax base after observing g=0 and g=1 under the beliefs of the given profile."""
    if tag is EquilibriumTag.NO_PURE_EQUILIBRIUM:
        return laffer_peak_revenue(model, 0, alpha_L), None
    strategy = STRATEGY_OF_TAG[tag]
    p1 = posterior(strategy, 1, alpha_L, alpha_H, rho)
    p0 = posterior(strategy, 0, alpha_L, alpha_H, rho)
    return laffer_peak_revenue(model, 0, p0), laffer_peak_revenue(model, 1, p1)


def classify_equilibrium(model: ValidatedModel, alpha_L: float, alpha_H: float,
                         rho: float) -> EquilibriumClass:
    """Classify the pure-strategy PBE from the closed-form cutoffs, then re-check every IC."""
    if not model.kappa * alpha_H < 1.0:
        raise KappaInfeasible(f"kappa={model.kappa} violates kappa < 1/alpha_H = {1 / alpha_H:.6g}")
    regime = regime_of(alpha_L, alpha_H, model.sigma)
    th = threshold_set(alpha_L, alpha_H, rho, model.sigma)
    tag = _threshold_tag(model.kappa, regime, th)
    gains = incentive_gains(model, alpha_L, alpha_H, rho)
    ic_tag = tag_from_gains(gains)
    g0, g1 = tax_bases(model, tag, alpha_L, alpha_H, rho)
    diagnostics = dict(gains)
    diagnostics["ic_tag"] = ic_tag.value
    diagnostics["ic_agrees"] = ic_tag is tag
    return EquilibriumClass(tag=tag, regime=regime, thresholds=th,
                            tax_base_g0=g0, tax_base_g1=g1, diagnostics=diagnostics)


def posterior(strategy: Strategy, observed_g: int, alpha_L: float, alpha_H: float, rho: float) -> float:
    """Posterior mean valuation after observing ``observed_g`` under ``strategy``."""
    strategy = Strategy(strategy)
    a_bar = rho * alpha_H + (1.0 - rho) * alpha_L
    if strategy is Strategy.SEPARATING:
        return alpha_H if observed_g == 1 else alpha_L
    if strategy is Strategy.POOLING_RENTS:
        return a_bar if observed_g == 0 else alpha_H
    return a_bar if observed_g == 1 else alpha_L


def jump_factor(model: ValidatedModel, alpha_H: float) -> float:
    """Same-period multiplier T1(alpha_H) / T0 = (1 - kappa s) / (1 - kappa alpha_H)."""
    require_phi_feasible(model.kappa, alpha_H)
    return (1.0 - model.kappa * model.s) / (1.0 - model.kappa * alpha_H)

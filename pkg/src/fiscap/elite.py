"""Static elite problem: corner values, allocation, morality thresholds and regions.

Allocation decisions always come from comparing the two corner values
directly. The closed-form cutoffs are attached as diagnostics only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import (
    Aligned,
    DomainViolation,
    RegionMismatch,
    Unaligned,
    ValidatedModel,
    require_phi_feasible,
    theta as theta_of,
)
from .fiscal import laffer_peak_revenue

TIE_RTOL = 1e-12


class RegionTag(str, Enum):
    STRONG_PROVISION = "strong_provision"
    WEAK_PROVISION = "weak_provision"
    TRANSFER = "transfer"
    COMMON_INTEREST = "common_interest"
    WEAK = "weak"
    CONTESTED_COMMON_INTEREST = "contested_common_interest"
    CONTESTED_TRANSFER = "contested_transfer"
    KNIFE_EDGE = "knife_edge"


@dataclass(frozen=True)
class StaticRegion:
    tag: RegionTag
    cutoff: float | None = None
    # g* direction across the cutoff, from the corner comparison
    provision_above_cutoff: bool | None = None
    # direction as the closed-form case list states it
    stated_provision_above_cutoff: bool | None = None
    # at the model's kappa: g* per the stated case list vs per the corner comparison
    stated_g_star: int | None = None
    g_star: int | None = None
    note: str | None = None

    @property
    def direction_conflict(self) -> bool:
        return (
            self.provision_above_cutoff is not None
            and self.stated_provision_above_cutoff is not None
            and self.provision_above_cutoff != self.stated_provision_above_cutoff
        )

    @property
    def conflict_at_kappa(self) -> bool:
        return self.stated_g_star is not None and self.stated_g_star != self.g_star

    def to_dict(self) -> dict:
        return {
            "tag": self.tag.value,
            "cutoff": self.cutoff,
            "provision_above_cutoff": self.provision_above_cutoff,
            "stated_provision_above_cutoff": self.stated_provision_above_cutoff,
            "direction_conflict": self.direction_conflict,
            "stated_g_star": self.stated_g_star,
            "g_star": self.g_star,
            "conflict_at_kappa": self.conflict_at_kappa,
            "note": self.note,
        }


@dataclass(frozen=True)
class AllocationDecision:
    g_star: int
    tie: bool
    v0: float
    v1: float
    region: StaticRegion


def _resolve_alphas(model: ValidatedModel, alpha_E: float | None, alpha_C: float | None):
    if alpha_E is not None and alpha_C is not None:
        return alpha_E, alpha_C
    if alpha_E is not None:
        return alpha_E, alpha_E
    v = model.values
    if isinstance(v, Aligned):
        return v.alpha, v.alpha
    if isinstance(v, Unaligned):
        return v.alpha_E, v.alpha_C
    raise DomainViolation("elite valuations not supplied and model carries no static value config")


def elite_value(model: ValidatedModel, g: int, alpha_E: float, alpha_C: float | None = None) -> float:
    """V(g) = T_hat(g) [alpha_E g + theta (1-g)], tax base driven by the citizens' alpha_C."""
    if alpha_C is None:
        alpha_C = alpha_E
    require_phi_feasible(model.kappa, alpha_C)
    return laffer_peak_revenue(model, g, alpha_C) * (alpha_E * g + model.theta * (1 - g))


def _is_tie(v0: float, v1: float) -> bool:
    return abs(v1 - v0) <= TIE_RTOL * max(1.0, abs(v0))


def _corner_choice(w, c, sigma, kappa, alpha_E, alpha_C) -> int:
    """Corner comparison without constructing a model; used for direction probes."""
    th = 1.0 / (1.0 + sigma)
    s = sigma * th
    v1 = w * c / (4.0 * (1.0 - kappa * alpha_C)) * alpha_E
    v0 = w * c / (4.0 * (1.0 - kappa * s)) * th
    return 1 if v1 > v0 or _is_tie(v0, v1) else 0


def classify_aligned(alpha: float, sigma: float) -> StaticRegion:
    th = theta_of(sigma)
    s = sigma * th
    if alpha > th:
        return StaticRegion(RegionTag.STRONG_PROVISION)
    if alpha > s:
        return StaticRegion(
            RegionTag.WEAK_PROVISION,
            cutoff=morality_threshold_aligned(alpha, sigma),
            provision_above_cutoff=True,
            stated_provision_above_cutoff=True,
        )
    return StaticRegion(RegionTag.TRANSFER)


def classify_unaligned(model: ValidatedModel, alpha_E: float, alpha_C: float) -> StaticRegion:
    """Static region when elite and citizens value the public good differently.

    The direction of g* across a contested cutoff comes from the corner
    comparison, not from the case labels. The case list states provision
    above the cutoff in both contested states; in the contested
    common-interest state the comparison says the reverse, and the region
    carries both readings plus a note.
    """
    th, s = model.theta, model.s
    cross = alpha_E * s - th * alpha_C
    if math.isclose(alpha_E * s, th * alpha_C, rel_tol=1e-12, abs_tol=1e-15):
        return StaticRegion(
            RegionTag.KNIFE_EDGE,
            note="alpha_E*s == theta*alpha_C: morality drops out; g* is decided by alpha_E vs theta",
        )
    if alpha_E > th and alpha_C < s:
        tag = RegionTag.CONTESTED_COMMON_INTEREST
        cutoff = (alpha_E - th) / cross
    elif alpha_E < th and alpha_C > s:
        tag = RegionTag.CONTESTED_TRANSFER
        cutoff = (th - alpha_E) / (th * alpha_C - alpha_E * s)
    elif alpha_E <= th and alpha_C <= s:
        return StaticRegion(RegionTag.WEAK)
    else:
        return StaticRegion(RegionTag.COMMON_INTEREST)

    # one corner comparison at kappa = 0 (always below a positive cutoff) fixes the
    # direction: the switch condition is linear in kappa, so the side above is the opposite
    below = _corner_choice(model.w, model.c, model.sigma, 0.0, alpha_E, alpha_C)
    provision_above = below == 0
    stated_g = 1 if model.kappa >= cutoff else 0
    actual_g = _corner_choice(model.w, model.c, model.sigma, model.kappa, alpha_E, alpha_C)
    notes = []
    if provision_above is not True:
        notes.append("corner comparison gives provision below the cutoff and rents above; "
                     "the stated case list has the reverse. Following the corner comparison.")
    if not cutoff < min(1.0, 1.0 / alpha_C):
        notes.append(f"cutoff {cutoff:.6g} lies outside the feasible morality range; "
                     f"g*={below} for every admissible kappa")
    return StaticRegion(tag, cutoff=cutoff, provision_above_cutoff=provision_above,
                        stated_provision_above_cutoff=True, stated_g_star=stated_g,
                        g_star=actual_g, note=" ".join(notes) or None)


def optimal_allocation(model: ValidatedModel, alpha_E: float | None = None,
                       alpha_C: float | None = None) -> AllocationDecision:
    aE, aC = _resolve_alphas(model, alpha_E, alpha_C)
    v0 = elite_value(model, 0, aE, aC)
    v1 = elite_value(model, 1, aE, aC)
    tie = _is_tie(v0, v1)
    g_star = 1 if (tie or v1 > v0) else 0
    if aE == aC:
        region = classify_aligned(aE, model.sigma)
    else:
        region = classify_unaligned(model, aE, aC)
    return AllocationDecision(g_star=g_star, tie=tie, v0=v0, v1=v1, region=region)


def _check_weak_provision(alpha: float, sigma: float) -> tuple[float, float]:
    if not 0.0 < sigma < 1.0:
        raise DomainViolation(f"sigma={sigma} outside (0, 1)")
    th = theta_of(sigma)
    s = sigma * th
    if not s < alpha <= th:
        raise RegionMismatch(
            f"alpha={alpha} outside the weak-provision band ({s:.6g}, {th:.6g}] for sigma={sigma}"
        )
    return th, s


def morality_threshold_aligned(alpha: float, sigma: float) -> float:
    """kappa_bar = (theta - alpha) / (alpha theta (1 - sigma)) for s < alpha <= theta."""
    th, _ = _check_weak_provision(alpha, sigma)
    return (th - alpha) / (alpha * th * (1.0 - sigma))


def threshold_comparative_statics(alpha: float, sigma: float, h: float = 1e-5) -> tuple[float, float]:
    """Central finite differences (d kappa_bar / d alpha, d kappa_bar / d sigma)."""
    if not h > 0:
        raise DomainViolation(f"step h={h} must be > 0")
    for a, sg in ((alpha - h, sigma), (alpha + h, sigma), (alpha, sigma - h), (alpha, sigma + h)):
        _check_weak_provision(a, sg)
    d_alpha = (morality_threshold_aligned(alpha + h, sigma)
               - morality_threshold_aligned(alpha - h, sigma)) / (2 * h)
    d_sigma = (morality_threshold_aligned(alpha, sigma + h)
               - morality_threshold_aligned(alpha, sigma - h)) / (2 * h)
    return d_alpha, d_sigma


def equilibrium_tax_base(model: ValidatedModel, g_star: int, alpha: float) -> float:
    """T1 = wc/(4(1 - kappa alpha)) under provision, T0 = wc/(4(1 - kappa s)) under rents."""
    if g_star not in (0, 1):
        raise DomainViolation(f"g_star={g_star} must be 0 or 1")
    require_phi_feasible(model.kappa, alpha)
    return laffer_peak_revenue(model, g_star, alpha)

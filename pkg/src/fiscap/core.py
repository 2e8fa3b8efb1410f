"""Model primitives: parameter containers, validation and shared scalar maps."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union


class FiscapError(Exception):
    """Base class for every error raised by the library."""


class DomainViolation(FiscapError, ValueError):
    pass


class KappaInfeasible(FiscapError, ValueError):
    """Morality too high for the relevant valuation (kappa >= 1/alpha)."""


class PhiInfeasible(FiscapError, ValueError):
    """kappa * phi >= 1: the report formula would exceed true income."""


class RegionMismatch(FiscapError, ValueError):
    """A threshold formula was asked for outside the region where it is defined."""


@dataclass(frozen=True)
class ModelParams:
    w: float
    c: float
    sigma: float
    kappa: float


@dataclass(frozen=True)
class Aligned:
    alpha: float

    @property
    def relevant_alpha(self) -> float:
        return self.alpha


@dataclass(frozen=True)
class Unaligned:
    alpha_E: float
    alpha_C: float

    @property
    def relevant_alpha(self) -> float:
        return self.alpha_C


@dataclass(frozen=True)
class TwoState:
    alpha_L: float
    alpha_H: float
    rho: float

    @property
    def relevant_alpha(self) -> float:
        return self.alpha_H

    @property
    def alpha_bar(self) -> float:
        return self.rho * self.alpha_H + (1.0 - self.rho) * self.alpha_L


ValueConfig = Union[Aligned, Unaligned, TwoState]


@dataclass(frozen=True)
class Policy:
    t: float
    g: float

    def __post_init__(self):
        if not self.t >= 0:
            raise DomainViolation(f"tax rate t={self.t} must be >= 0")
        if not 0.0 <= self.g <= 1.0:
            raise DomainViolation(f"allocation share g={self.g} must lie in [0, 1]")


@dataclass(frozen=True)
class ValidatedModel:
    """Parameters that passed :func:`validate`, with theta and s cached.

    ``values`` may be None when only the economy primitives are needed
    (the dynamic-game helpers take valuations as explicit arguments).
    """

    params: ModelParams
    values: ValueConfig | None
    theta: float
    s: float

    @property
    def w(self) -> float:
        return self.params.w

    @property
    def c(self) -> float:
        return self.params.c

    @property
    def sigma(self) -> float:
        return self.params.sigma

    @property
    def kappa(self) -> float:
        return self.params.kappa

    def with_kappa(self, kappa: float) -> ValidatedModel:
        return validate(replace(self.params, kappa=kappa), self.values)


def theta(sigma: float) -> float:
    """Elite's residual share of non-provision revenue, 1/(1+sigma)."""
    if not 0.0 <= sigma <= 1.0:
        raise DomainViolation(f"sigma={sigma} outside [0, 1]")
    return 1.0 / (1.0 + sigma)


def phi(g: float, alpha: float, sigma: float) -> float:
    """Effective moral return to reporting: g*alpha + (1-g)*sigma*theta(sigma)."""
    if not 0.0 <= g <= 1.0:
        raise DomainViolation(f"g={g} outside [0, 1]")
    if not alpha > 0:
        raise DomainViolation(f"alpha={alpha} must be > 0")
    if not 0.0 < sigma < 1.0:
        raise DomainViolation(f"sigma={sigma} outside (0, 1)")
    return g * alpha + (1.0 - g) * sigma * theta(sigma)


def _check_values(values: ValueConfig) -> None:
    if isinstance(values, Aligned):
        alphas = {"alpha": values.alpha}
    elif isinstance(values, Unaligned):
        alphas = {"alpha_E": values.alpha_E, "alpha_C": values.alpha_C}
    elif isinstance(values, TwoState):
        alphas = {"alpha_L": values.alpha_L, "alpha_H": values.alpha_H}
        if not 0.0 <= values.rho <= 1.0:
            raise DomainViolation(f"rho={values.rho} outside [0, 1]")
        if not values.alpha_L < values.alpha_H:
            raise DomainViolation(
                f"two-state valuations need alpha_L < alpha_H, got {values.alpha_L} >= {values.alpha_H}"
            )
    else:
        raise DomainViolation(f"unknown value configuration {values!r}")
    for name, a in alphas.items():
        if not a > 0:
            raise DomainViolation(f"{name}={a} must be > 0")


def validate(params: ModelParams, values: ValueConfig | None = None) -> ValidatedModel:
    """Check every feasibility bound and return an immutable validated bundle.

    Raises DomainViolation for primitive bounds and KappaInfeasible when
    kappa >= 1/alpha for the valuation that drives compliance. Static
    configurations also need kappa < 1; with two-state valuations the only
    upper bound is kappa < 1/alpha_H.
    """
    if not params.w > 0:
        raise DomainViolation(f"w={params.w} must be > 0")
    if not params.c > 0:
        raise DomainViolation(f"c={params.c} must be > 0")
    if not 0.0 < params.sigma < 1.0:
        raise DomainViolation(f"sigma={params.sigma} outside (0, 1)")
    # the two-state game only restricts kappa < 1/alpha_H, which can exceed 1
    upper = None if isinstance(values, TwoState) else 1.0
    if not params.kappa >= 0.0 or (upper is not None and not params.kappa < upper):
        raise DomainViolation(f"kappa={params.kappa} outside [0, 1)")
    if values is not None:
        _check_values(values)
        a = values.relevant_alpha
        if not params.kappa * a < 1.0:
            raise KappaInfeasible(
                f"kappa={params.kappa} violates kappa < 1/alpha = {1.0 / a:.6g}"
            )
    th = theta(params.sigma)
    return ValidatedModel(params=params, values=values, theta=th, s=params.sigma * th)


def make_model(w: float = 1.0, c: float = 1.0, sigma: float = 0.1, kappa: float = 0.0,
               values: ValueConfig | None = None) -> ValidatedModel:
    return validate(ModelParams(w=w, c=c, sigma=sigma, kappa=kappa), values)


def require_phi_feasible(kappa: float, phi_value: float) -> None:
    if not kappa * phi_value < 1.0:
        raise PhiInfeasible(f"kappa*phi = {kappa * phi_value:.6g} >= 1")

"""Citizen side: concealment cost, Homo Moralis utility and the optimal report."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Policy, ValidatedModel, phi


def concealment_cost(d, c: float):
    """c * C(d) with the quadratic cost C(d) = d^2 / 2."""
    return 0.5 * c * np.square(d)


def net_income(report, model: ValidatedModel, policy: Policy):
    """Post-tax, pre-transfer income z(w~) = w - t*w~ - c*C(w~ - w)."""
    return model.w - policy.t * report - concealment_cost(report - model.w, model.c)


@dataclass(frozen=True)
class ReportOutcome:
    report: float
    interior: bool
    deviation: float
    net_income: float
    concealment_cost: float


def unclamped_report(model: ValidatedModel, policy: Policy, alpha: float) -> float:
    return model.w + (policy.t / model.c) * (model.kappa * phi(policy.g, alpha, model.sigma) - 1.0)


def optimal_report(model: ValidatedModel, policy: Policy, alpha: float) -> ReportOutcome:
    """Utility-maximizing report, clamped at the w~ >= 0 corner.

    ``alpha`` is whatever valuation drives compliance: the common alpha,
    the citizens' alpha_C, or the posterior mean in the dynamic game.
    """
    raw = unclamped_report(model, policy, alpha)
    report = max(0.0, raw)
    d = report - model.w
    return ReportOutcome(
        report=report,
        interior=raw >= 0.0,
        deviation=d,
        net_income=float(net_income(report, model, policy)),
        concealment_cost=float(concealment_cost(d, model.c)),
    )


def universalized_components(report, policy: Policy, model: ValidatedModel):
    """Per-capita (T, G, b, z) if every citizen filed ``report``."""
    T = policy.t * report
    G = policy.g * T
    b = model.s * (1.0 - policy.g) * T
    z = net_income(report, model, policy)
    return T, G, b, z


def universalized_ambient(model: ValidatedModel, policy: Policy, alpha: float) -> tuple[float, float]:
    """Aggregates (G, b) when everybody plays the optimal report."""
    r = optimal_report(model, policy, alpha).report
    _, G, b, _ = universalized_components(r, policy, model)
    return float(G), float(b)


def hm_utility(report, model: ValidatedModel, policy: Policy, alpha: float,
               ambient_G: float | None = None, ambient_b: float | None = None):
    """Homo Moralis utility of filing ``report``; vectorizes over ``report``.

    The selfish term takes (ambient_G, ambient_b) as given. When either is
    omitted both default to the universalized fixed point.
    """
    if ambient_G is None or ambient_b is None:
        ambient_G, ambient_b = universalized_ambient(model, policy, alpha)
    k = model.kappa
    z = net_income(report, model, policy)
    _, G_m, b_m, z_m = universalized_components(report, policy, model)
    selfish = alpha * ambient_G + ambient_b + z
    moral = alpha * G_m + b_m + z_m
    return (1.0 - k) * selfish + k * moral

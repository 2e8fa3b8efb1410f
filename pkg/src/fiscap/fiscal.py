"""Revenue (Laffer) objects."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DomainViolation, Policy, ValidatedModel, phi, require_phi_feasible


@dataclass(frozen=True)
class LafferPoint:
    t: float
    revenue: float
    report: float


def _slope(model: ValidatedModel, g: float, alpha: float) -> float:
    return 1.0 - model.kappa * phi(g, alpha, model.sigma)


def revenue_parabola(t, model: ValidatedModel, g: float, alpha: float):
    """Unclamped closed form (t w / c) [c - t (1 - kappa phi)]; negative past the second root."""
    t = np.asarray(t, dtype=float)
    return (t * model.w / model.c) * (model.c - t * _slope(model, g, alpha))


def induced_report(t, model: ValidatedModel, g: float, alpha: float):
    """Clamped optimal report as a function of t (array friendly)."""
    if isinstance(t, (float, np.floating)):
        return max(0.0, model.w - (t / model.c) * _slope(model, g, alpha))
    t = np.asarray(t, dtype=float)
    return np.maximum(0.0, model.w - (t / model.c) * _slope(model, g, alpha))


def revenue_curve(t, model: ValidatedModel, g: float, alpha: float):
    """Revenue (t w / c)[c - t (1 - kappa phi)], held at 0 past its second root.

    With w = 1 this is exactly t times the clamped optimal report. For other
    incomes the closed form scales the whole curve by w, while t * w~ only
    scales the linear term; the closed form is kept because the peak, tax
    bases and elite values downstream are all built on it.
    """
    if isinstance(t, (float, np.floating)):
        return t * model.w * max(0.0, 1.0 - t * _slope(model, g, alpha) / model.c)
    t = np.asarray(t, dtype=float)
    return t * model.w * np.maximum(0.0, 1.0 - t * _slope(model, g, alpha) / model.c)


def revenue(model: ValidatedModel, policy: Policy, alpha: float) -> float:
    """Per-capita revenue at policy (t, g); never negative."""
    return float(revenue_curve(float(policy.t), model, policy.g, alpha))


def laffer_peak_rate(model: ValidatedModel, g: float, alpha: float) -> float:
    ph = phi(g, alpha, model.sigma)
    require_phi_feasible(model.kappa, ph)
    return (model.c / 2.0) / (1.0 - model.kappa * ph)


def laffer_peak_revenue(model: ValidatedModel, g: float, alpha: float) -> float:
    ph = phi(g, alpha, model.sigma)
    require_phi_feasible(model.kappa, ph)
    return model.w * model.c / (4.0 * (1.0 - model.kappa * ph))


def laffer_root(model: ValidatedModel, g: float, alpha: float) -> float:
    """Second root of the revenue parabola, c / (1 - kappa phi)."""
    ph = phi(g, alpha, model.sigma)
    require_phi_feasible(model.kappa, ph)
    return model.c / (1.0 - model.kappa * ph)


def laffer_curve(model: ValidatedModel, g: float, alpha: float, t_min: float, t_max: float,
                 n_points: int) -> list[LafferPoint]:
    if not (t_min < t_max and t_min >= 0):
        raise DomainViolation(f"need 0 <= t_min < t_max, got [{t_min}, {t_max}]")
    if n_points < 2:
        raise DomainViolation(f"n_points={n_points} must be >= 2")
    ts = np.linspace(t_min, t_max, n_points)
    reports = induced_report(ts, model, g, alpha)
    revs = revenue_curve(ts, model, g, alpha)
    return [LafferPoint(float(t), float(r), float(w)) for t, r, w in zip(ts, revs, reports)]

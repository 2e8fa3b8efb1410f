"""Brute-force verification layer.

Nothing here calls the closed-form peak, threshold or classifier formulas on
the oracle side. Maximizers come from a grid scan followed by golden-section
refinement of the primitive objectives (utility, revenue, corner value);
cutoffs come from bisection on the direct corner comparison.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

import numpy as np
from scipy.optimize import bisect

from .citizen import hm_utility
from .core import FiscapError, Policy, ValidatedModel, validate
from .fiscal import revenue_curve
from .signaling import (
    PURE_TAGS,
    EquilibriumClass,
    EquilibriumTag,
    STRATEGY_OF_TAG,
    posterior,
    profile_constraints,
)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class GridTooCoarse(FiscapError):
    pass


@dataclass(frozen=True)
class GridSpec:
    lo: float | None = None
    hi: float | None = None
    step: float = 1e-3
    iterations: int = 60
    tolerance: float = 1e-6


@dataclass(frozen=True)
class OracleReport:
    target: str
    closed_form: float
    oracle_value: float
    abs_err: float
    passed: bool
    grid_spec: tuple
    tolerance: float
    # sign condition checked alongside agreement (None when there is none)
    ic_holds: bool | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["grid_spec"] = list(self.grid_spec)
        return d


def make_report(target: str, closed: float, oracle: float, tol: float, grid: tuple = (),
                ic_holds: bool | None = None) -> OracleReport:
    err = abs(closed - oracle)
    passed = err <= tol and ic_holds is not False
    return OracleReport(target, float(closed), float(oracle), float(err), bool(passed),
                        tuple(grid), tol, ic_holds)


def golden_section_max(f, a: float, b: float, iterations: int = 60) -> float:
    """Maximizer of a unimodal scalar function on [a, b]."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    # candidates include the endpoints so corner maxima are recovered exactly
    xs = (a, c, d, b)
    vals = [f(x) for x in xs]
    return xs[int(np.argmax(vals))]


def grid_then_golden(f, lo: float, hi: float, step: float, iterations: int,
                     dtype=np.longdouble) -> tuple[float, float]:
    """Scan ``f`` (vectorized) on a uniform grid, then refine around the best node.

    The refinement runs in ``dtype``. Extended precision matters for the
    maximizer only: near a flat quadratic peak float64 values pin the argmax
    down to ~sqrt(eps) of the bracket scale, while the maximum itself is
    accurate to ~eps either way.
    """
    n = int(math.ceil((hi - lo) / step)) + 1
    if n < 3:
        raise GridTooCoarse(f"grid on [{lo}, {hi}] with step {step} has fewer than 3 nodes")
    xs = np.linspace(lo, hi, n)
    ys = np.asarray(f(xs), dtype=float)
    i = int(np.argmax(ys))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, n - 1)]
    x = float(golden_section_max(f, dtype(a), dtype(b), iterations))
    fx = float(f(x))
    if fx < ys[i] - 1e-12 * max(1.0, abs(ys[i])):
        raise GridTooCoarse(f"refinement lost the bracket around x={xs[i]:.6g}")
    return x, fx


def brute_force_report(model: ValidatedModel, policy: Policy, alpha: float,
                       grid: GridSpec = GridSpec()) -> float:
    """Numerical argmax of the Homo Moralis utility over reports in [0, 2w]."""
    lo = 0.0 if grid.lo is None else grid.lo
    hi = 2.0 * model.w if grid.hi is None else grid.hi
    if lo > 0.0 or hi < 2.0 * model.w:
        raise GridTooCoarse(f"report grid [{lo}, {hi}] must cover [0, 2w]")

    def objective(r):
        # ambient aggregates are constants in the selfish term; zero is as good as any
        return hm_utility(r, model, policy, alpha, ambient_G=0.0, ambient_b=0.0)

    x, _ = grid_then_golden(objective, lo, hi, grid.step, grid.iterations)
    return x


def revenue_support(model: ValidatedModel, g: float, alpha: float) -> float:
    """Smallest power-of-two multiple of c at which revenue has hit zero."""
    hi = model.c
    while revenue_curve(hi, model, g, alpha) > 0.0:
        hi *= 2.0
        if hi > 1e9:
            raise GridTooCoarse("revenue never returns to zero")
    return hi


def brute_force_peak(model: ValidatedModel, g: float, alpha: float,
                     grid: GridSpec = GridSpec(), dtype=np.longdouble) -> tuple[float, float]:
    """(t_hat, T_hat) by maximizing the revenue function numerically."""
    lo = 0.0 if grid.lo is None else grid.lo
    hi = revenue_support(model, g, alpha) if grid.hi is None else grid.hi
    return grid_then_golden(lambda t: revenue_curve(t, model, g, alpha), lo, hi, grid.step, grid.iterations,
                            dtype)


def brute_force_elite_value(model: ValidatedModel, g: int, alpha_E: float, alpha_C: float) -> float:
    # only the peak value is needed, which float64 refinement already gets to ~eps
    _, T = brute_force_peak(model, g, alpha_C, dtype=np.float64)
    return T * (alpha_E * g + model.theta * (1 - g))


def brute_force_allocation(model: ValidatedModel, alpha_E: float, alpha_C: float | None = None) -> int:
    if alpha_C is None:
        alpha_C = alpha_E
    v0 = brute_force_elite_value(model, 0, alpha_E, alpha_C)
    v1 = brute_force_elite_value(model, 1, alpha_E, alpha_C)
    return 1 if v1 >= v0 else 0


def bisect_threshold(model: ValidatedModel, alpha_E: float, alpha_C: float | None = None,
                     xtol: float = 1e-13) -> float:
    """Morality level at which the corner comparison flips, by bisection on V(1) - V(0)."""
    if alpha_C is None:
        alpha_C = alpha_E
    hi = (1.0 / alpha_C) * (1.0 - 1e-9)
    hi = min(hi, 1.0 - 1e-12)

    def gap(k):
        m = validate(replace(model.params, kappa=k))
        return (brute_force_elite_value(m, 1, alpha_E, alpha_C)
                - brute_force_elite_value(m, 0, alpha_E, alpha_C))

    return bisect(gap, 0.0, hi, xtol=xtol, maxiter=200)


def brute_force_gains(model: ValidatedModel, alpha_L: float, alpha_H: float, rho: float) -> dict:
    """Provision gains for every IC, rebuilt from numerically maximized tax bases."""
    a_bar = rho * alpha_H + (1.0 - rho) * alpha_L
    _, T0 = brute_force_peak(model, 0, alpha_L)
    _, T1_H = brute_force_peak(model, 1, alpha_H)
    _, T1_bar = brute_force_peak(model, 1, a_bar)
    th = model.theta
    return {
        "high_at_alpha_H": alpha_H * T1_H - th * T0,
        "low_at_alpha_H": alpha_L * T1_H - th * T0,
        "high_at_alpha_bar": alpha_H * T1_bar - th * T0,
        "low_at_alpha_bar": alpha_L * T1_bar - th * T0,
    }


def _closed_gains(model: ValidatedModel, alpha_L: float, alpha_H: float, rho: float) -> dict:
    from .signaling import incentive_gains
    return incentive_gains(model, alpha_L, alpha_H, rho)


def _gain_key(tag: EquilibriumTag, who: str) -> str:
    belief = "alpha_bar" if tag is EquilibriumTag.POOLING_PROVISION else "alpha_H"
    return f"{who}_at_{belief}"


def verify_pbe(candidate, model: ValidatedModel, alpha_L: float, alpha_H: float, rho: float,
               tol: float = 1e-6) -> list[OracleReport]:
    """Check a candidate equilibrium against brute-force incentive constraints.

    For a pure profile: per type, the on-path payoff and the gain of the
    equilibrium action over the deviation (with the profile's on/off-path
    beliefs). For NO_PURE_EQUILIBRIUM: one report per pure profile, passing
    when some IC of that profile fails.
    """
    tag = candidate.tag if isinstance(candidate, EquilibriumClass) else EquilibriumTag(candidate)
    closed = _closed_gains(model, alpha_L, alpha_H, rho)
    brute = brute_force_gains(model, alpha_L, alpha_H, rho)
    grid = (0.0, None, GridSpec().step, GridSpec().iterations)
    scale = model.w * model.c / 4.0
    reports = []
    if tag is EquilibriumTag.NO_PURE_EQUILIBRIUM:
        for pure in PURE_TAGS:
            holds = profile_constraints(pure, brute)
            failing = [who for who, ok in holds.items() if not ok] or ["high"]
            key = _gain_key(pure, failing[0])
            reports.append(make_report(f"pbe.{tag.value}.rules_out.{pure.value}",
                                       closed[key], brute[key], tol, grid,
                                       ic_holds=not all(holds.values())))
        return reports

    strategy = STRATEGY_OF_TAG[tag]
    holds = profile_constraints(tag, brute)
    th = model.theta
    for who, alpha in (("high", alpha_H), ("low", alpha_L)):
        key = _gain_key(tag, who)
        provides = (tag is EquilibriumTag.POOLING_PROVISION
                    or (tag is EquilibriumTag.SEPARATION and who == "high"))
        sign = 1.0 if provides else -1.0
        # on-path payoff: g=1 pays alpha*T1(p(1)), g=0 pays theta*T0
        p_on = posterior(strategy, 1 if provides else 0, alpha_L, alpha_H, rho)
        if provides:
            closed_pay = alpha * scale / (1.0 - model.kappa * p_on)
            brute_pay = alpha * brute_force_peak(model, 1, p_on)[1]
        else:
            closed_pay = th * scale / (1.0 - model.kappa * model.s)
            brute_pay = th * brute_force_peak(model, 0, p_on)[1]
        reports.append(make_report(f"pbe.{tag.value}.{who}.on_path_payoff",
                                   closed_pay, brute_pay, tol, grid))
        reports.append(make_report(f"pbe.{tag.value}.{who}.deviation_ic",
                                   sign * closed[key], sign * brute[key], tol, grid,
                                   ic_holds=holds[who]))
    return reports


# ---------------------------------------------------------------------------
# seeded agreement suite

MARGIN = 0.01


def _u(rng, lo: float, hi: float, margin: float = MARGIN) -> float:
    """Uniform draw on [lo, hi] shrunk by ``margin`` of the width at both ends."""
    width = hi - lo
    return float(lo + width * (margin + (1.0 - 2.0 * margin) * rng.random()))


def _near(x: float, cutoffs, rel: float = MARGIN) -> bool:
    return any(c is not None and abs(x - c) <= rel * max(abs(c), 1e-3) for c in cutoffs)


def _economy(rng) -> tuple[float, float, float]:
    return _u(rng, 0.5, 2.0), _u(rng, 0.5, 2.0), _u(rng, 0.0, 1.0)


def check_report(rng) -> list[OracleReport]:
    from .citizen import optimal_report
    from .core import Aligned, make_model, phi

    w, c, sigma = _economy(rng)
    alpha = _u(rng, 0.1, 3.0)
    kappa = _u(rng, 0.0, min(1.0, 1.0 / alpha))
    model = make_model(w, c, sigma, kappa, Aligned(alpha))
    g = _u(rng, 0.0, 1.0, margin=0.0)
    # rates up to 120% of the reporting corner, so some draws land on w~ = 0
    t = _u(rng, 0.0, 1.2 * c / (1.0 - kappa * phi(g, alpha, sigma)))
    policy = Policy(t, g)
    gs = GridSpec()
    closed = optimal_report(model, policy, alpha).report
    brute = brute_force_report(model, policy, alpha, gs)
    return [make_report("citizen.optimal_report", closed, brute, gs.tolerance,
                        (0.0, 2.0 * w, gs.step, gs.iterations))]


def check_peaks(rng) -> list[OracleReport]:
    from .core import Aligned, make_model
    from .fiscal import laffer_peak_rate, laffer_peak_revenue

    w, c, sigma = _economy(rng)
    alpha = _u(rng, 0.1, 3.0)
    kappa = _u(rng, 0.0, min(1.0, 1.0 / alpha))
    model = make_model(w, c, sigma, kappa, Aligned(alpha))
    gs = GridSpec()
    out = []
    for g in (0, 1):
        t_b, T_b = brute_force_peak(model, g, alpha, gs)
        grid = (0.0, revenue_support(model, g, alpha), gs.step, gs.iterations)
        out.append(make_report(f"fiscal.laffer_peak_rate.g{g}", laffer_peak_rate(model, g, alpha),
                               t_b, gs.tolerance, grid))
        out.append(make_report(f"fiscal.laffer_peak_revenue.g{g}",
                               laffer_peak_revenue(model, g, alpha), T_b, gs.tolerance, grid))
    return out


def check_allocation(rng) -> list[OracleReport]:
    from .core import make_model
    from .elite import elite_value, optimal_allocation

    while True:
        w, c, sigma = _economy(rng)
        alpha_E = _u(rng, 0.05, 2.0)
        alpha_C = alpha_E if rng.random() < 0.5 else _u(rng, 0.05, 2.0)
        kappa = _u(rng, 0.0, min(1.0, 1.0 / alpha_C))
        model = make_model(w, c, sigma, kappa)
        v0 = elite_value(model, 0, alpha_E, alpha_C)
        v1 = elite_value(model, 1, alpha_E, alpha_C)
        if abs(v1 - v0) > MARGIN * max(v0, v1):
            break
    closed = optimal_allocation(model, alpha_E, alpha_C).g_star
    brute = brute_force_allocation(model, alpha_E, alpha_C)
    return [make_report("elite.optimal_allocation", closed, brute, 0.0)]


def check_threshold(rng, tol: float = 1e-9) -> list[OracleReport]:
    from .core import make_model
    from .elite import morality_threshold_aligned

    while True:
        sigma = _u(rng, 0.0, 1.0)
        th = 1.0 / (1.0 + sigma)
        alpha = _u(rng, sigma * th, th)
        closed = morality_threshold_aligned(alpha, sigma)
        # kappa lives in [0, 1): keep draws whose switch is observable
        if closed < (1.0 - MARGIN) * min(1.0, 1.0 / alpha):
            break
    model = make_model(1.0, 1.0, sigma, 0.0)
    brute = bisect_threshold(model, alpha)
    return [make_report("elite.morality_threshold_aligned", closed, brute, tol)]


def draw_two_state(rng):
    """Random (model, alpha_L, alpha_H, rho) away from every cutoff."""
    from .core import TwoState, make_model
    from .signaling import threshold_set

    while True:
        w, c, sigma = _economy(rng)
        th = 1.0 / (1.0 + sigma)
        s = sigma * th
        alpha_L = _u(rng, 0.0, s)
        alpha_H = _u(rng, s, th) if rng.random() < 0.5 else _u(rng, th, 2.0 * th)
        rho = _u(rng, 0.0, 1.0)
        kappa = _u(rng, 0.0, 1.0 / alpha_H)
        ts = threshold_set(alpha_L, alpha_H, rho, sigma)
        if _near(kappa, (ts.kappa_min_H, ts.kappa_max_L, ts.kappa_pool, ts.kappa_H_min, ts.kappa_H_max)):
            continue
        return make_model(w, c, sigma, kappa, TwoState(alpha_L, alpha_H, rho)), alpha_L, alpha_H, rho


def check_pbe(rng) -> list[OracleReport]:
    from .signaling import classify_equilibrium, tag_from_gains

    model, aL, aH, rho = draw_two_state(rng)
    eq = classify_equilibrium(model, aL, aH, rho)
    order = list(EquilibriumTag)
    brute_tag = tag_from_gains(brute_force_gains(model, aL, aH, rho))
    out = [make_report("signaling.classify_equilibrium", order.index(eq.tag), order.index(brute_tag), 0.0)]
    out.extend(verify_pbe(eq, model, aL, aH, rho))
    return out


def check_jump(rng, tol: float = 1e-12) -> list[OracleReport]:
    from .elite import equilibrium_tax_base
    from .signaling import jump_factor

    model, _, aH, _ = draw_two_state(rng)
    ratio = equilibrium_tax_base(model, 1, aH) / equilibrium_tax_base(model, 0, aH)
    J = jump_factor(model, aH)
    return [make_report("signaling.jump_factor", J, ratio, tol,
                        ic_holds=(J > 1.0) if model.kappa > 0 else None)]


CHECKS = (check_report, check_peaks, check_allocation, check_threshold, check_pbe, check_jump)


def agreement_suite(seed: int = 42, draws: int = 1000) -> list[OracleReport]:
    """Every closed form against its oracle on ``draws`` seeded random draws.

    Each (draw, check) pair gets its own generator keyed on the seed, so the
    report stream is reproducible and ordered by draw index.
    """
    reports = []
    for i in range(draws):
        for j, check in enumerate(CHECKS):
            rng = np.random.default_rng([seed, i, j])
            reports.extend(check(rng))
    return reports

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fiscap import Aligned, DomainViolation, Policy, hm_utility, make_model, optimal_report, universalized_components
from fiscap.core import phi
from fiscap.oracle import brute_force_report


@pytest.mark.parametrize("g", [0.0, 0.5, 1.0])
def test_selfish_report(g):
    m = make_model(sigma=0.1, kappa=0.0, values=Aligned(1.5))
    assert optimal_report(m, Policy(0.5, g), 1.5).report == pytest.approx(0.5, abs=1e-15)


def test_fig1_report(fig1):
    out = optimal_report(fig1, Policy(0.5, 1.0), 1.5)
    assert out.report == pytest.approx(0.65, abs=1e-12)
    assert out.interior
    assert out.deviation == pytest.approx(-0.35)
    assert out.concealment_cost == pytest.approx(0.5 * 0.35 ** 2)
    assert out.net_income == pytest.approx(1 - 0.5 * 0.65 - 0.5 * 0.35 ** 2)


def test_clamped_report():
    m = make_model(sigma=0.1, kappa=0.0, values=Aligned(1.5))
    out = optimal_report(m, Policy(2.0, 1.0), 1.5)
    assert out.report == 0.0
    assert not out.interior
    assert out.deviation == -1.0


def test_universalized_full_report():
    m = make_model(sigma=0.1, values=Aligned(1.5))
    assert universalized_components(1.0, Policy(0.5, 1.0), m) == pytest.approx((0.5, 0.5, 0.0, 0.5))


def test_universalized_zero_report():
    # d = -1 costs c/2, so z^M = 1 - 0 - 0.5
    m = make_model(sigma=0.5, values=Aligned(0.5))
    assert universalized_components(0.0, Policy(0.5, 0.0), m) == pytest.approx((0.0, 0.0, 0.0, 0.5))


def test_universalized_zero_tax():
    m = make_model(w=2.0, c=3.0, sigma=0.5, values=Aligned(0.5))
    T, G, b, z = universalized_components(1.5, Policy(0.0, 0.3), m)
    assert (T, G, b) == (0.0, 0.0, 0.0)
    assert z == pytest.approx(2.0 - 1.5 * 0.25)


def test_selfish_utility():
    m = make_model(sigma=0.1, kappa=0.0, values=Aligned(1.5))
    p = Policy(0.4, 1.0)
    u = hm_utility(0.7, m, p, 1.5, ambient_G=0.2, ambient_b=0.05)
    assert u == pytest.approx(1.5 * 0.2 + 0.05 + (1 - 0.4 * 0.7 - 0.5 * 0.09))


def test_kappa_one_rejected():
    with pytest.raises(DomainViolation):
        make_model(kappa=1.0, values=Aligned(0.5))


def test_grid_argmax_fig1(fig1):
    grid = np.arange(0.0, 2.0 + 1e-9, 1e-3)
    u = hm_utility(grid, fig1, Policy(0.5, 1.0), 1.5, ambient_G=0.0, ambient_b=0.0)
    assert grid[np.argmax(u)] == pytest.approx(0.65, abs=1e-3)
    assert brute_force_report(fig1, Policy(0.5, 1.0), 1.5) == pytest.approx(0.65, abs=1e-6)


params = dict(
    w=st.floats(0.5, 2.0), c=st.floats(0.5, 2.0), sigma=st.floats(0.05, 0.95),
    alpha=st.floats(0.05, 2.0), kfrac=st.floats(0, 0.98), t=st.floats(0, 3), g=st.floats(0, 1),
)


def _draw(w, c, sigma, alpha, kfrac, t, g):
    kappa = kfrac * min(1.0, 1.0 / alpha)
    return make_model(w, c, sigma, kappa, Aligned(alpha)), Policy(t, g)


@given(**params, aG=st.floats(-5, 5), ab=st.floats(-5, 5))
def test_ambient_invariance(w, c, sigma, alpha, kfrac, t, g, aG, ab):
    m, p = _draw(w, c, sigma, alpha, kfrac, t, g)
    grid = np.linspace(0, 2 * w, 2001)
    base = hm_utility(grid, m, p, alpha, ambient_G=0.0, ambient_b=0.0)
    shifted = hm_utility(grid, m, p, alpha, ambient_G=aG, ambient_b=ab)
    # the shift is a constant, so the argmax cannot move
    assert np.argmax(base) == np.argmax(shifted)
    assert np.ptp(shifted - base) < 1e-9


@given(**params)
def test_report_formula_when_interior(w, c, sigma, alpha, kfrac, t, g):
    m, p = _draw(w, c, sigma, alpha, kfrac, t, g)
    out = optimal_report(m, p, alpha)
    raw = w + (t / c) * (m.kappa * phi(g, alpha, sigma) - 1)
    assert out.report >= 0
    if out.interior:
        assert out.report == raw
    else:
        assert raw < 0 and out.report == 0
    assert out.concealment_cost == pytest.approx(c * out.deviation ** 2 / 2)


@given(**params)
def test_under_reporting_under_validated_inputs(w, c, sigma, alpha, kfrac, t, g):
    m, p = _draw(w, c, sigma, alpha, kfrac, t, 1.0)
    assert m.kappa * phi(1.0, alpha, sigma) < 1
    if t > 1e-9:
        assert optimal_report(m, p, alpha).report < w


@given(**params, k2=st.floats(0, 0.98))
def test_report_monotone_in_kappa(w, c, sigma, alpha, kfrac, t, g, k2):
    m1, p = _draw(w, c, sigma, alpha, min(kfrac, k2), t, g)
    m2, _ = _draw(w, c, sigma, alpha, max(kfrac, k2), t, g)
    assert optimal_report(m1, p, alpha).report <= optimal_report(m2, p, alpha).report


@given(**params, dt=st.floats(1e-3, 1))
def test_report_decreasing_in_t(w, c, sigma, alpha, kfrac, t, g, dt):
    m, p = _draw(w, c, sigma, alpha, kfrac, t, g)
    lo = optimal_report(m, p, alpha)
    hi = optimal_report(m, Policy(t + dt, g), alpha)
    if lo.interior:
        assert hi.report < lo.report
    else:
        assert hi.report == 0.0

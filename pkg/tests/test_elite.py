import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from fiscap import (
    Aligned, RegionMismatch, Unaligned, classify_unaligned, elite_value, equilibrium_tax_base,
    make_model, morality_threshold_aligned, optimal_allocation, threshold_comparative_statics,
)
from fiscap.core import DomainViolation, PhiInfeasible, theta
from fiscap.elite import RegionTag
from fiscap.oracle import bisect_threshold, brute_force_allocation


def test_elite_values_fig1():
    m = make_model(sigma=0.1, values=Aligned(1.5))
    assert elite_value(m, 1, 1.5) == pytest.approx(0.375)
    assert elite_value(m, 0, 1.5) == pytest.approx(0.227273, abs=5e-7)


def test_indifference_at_theta_without_morality():
    th = theta(0.3)
    m = make_model(sigma=0.3, values=Aligned(th))
    assert elite_value(m, 1, th) == pytest.approx(elite_value(m, 0, th), rel=1e-14)
    dec = optimal_allocation(m)
    assert dec.tie and dec.g_star == 1


def test_elite_values_unaligned():
    m = make_model(sigma=0.5, values=Unaligned(1.0, 0.2))
    assert elite_value(m, 1, 1.0, 0.2) == pytest.approx(0.25)
    assert elite_value(m, 0, 1.0, 0.2) == pytest.approx(1 / 6)


def test_elite_value_phi_infeasible():
    m = make_model(sigma=0.5, kappa=0.6, values=Aligned(0.5))
    with pytest.raises(PhiInfeasible):
        elite_value(m, 1, 1.0, 2.0)


def test_allocation_strong_provision():
    dec = optimal_allocation(make_model(sigma=0.1, kappa=0.1, values=Aligned(1.5)))
    assert dec.g_star == 1 and dec.region.tag is RegionTag.STRONG_PROVISION


@pytest.mark.parametrize("kappa", [0.0, 0.3, 0.6, 0.9])
def test_allocation_transfer(kappa):
    dec = optimal_allocation(make_model(sigma=0.5, kappa=kappa, values=Aligned(0.2)))
    assert dec.g_star == 0 and dec.region.tag is RegionTag.TRANSFER


@pytest.mark.parametrize("kappa, g", [(0.2, 0), (0.4, 1)])
def test_allocation_weak_provision(kappa, g):
    dec = optimal_allocation(make_model(sigma=0.5, kappa=kappa, values=Aligned(0.6)))
    assert dec.g_star == g
    assert dec.region.tag is RegionTag.WEAK_PROVISION
    assert dec.region.cutoff == pytest.approx(1 / 3, abs=1e-12)


def test_threshold_values():
    assert morality_threshold_aligned(theta(0.4), 0.4) == pytest.approx(0.0, abs=1e-15)
    assert morality_threshold_aligned(0.6, 0.5) == pytest.approx(1 / 3, abs=1e-12)
    _, d_sigma = threshold_comparative_statics(0.5, 0.5)
    assert abs(d_sigma) < 1e-6


@pytest.mark.parametrize("alpha, sigma, err", [
    (0.2, 0.5, RegionMismatch), (0.7, 0.5, RegionMismatch), (0.5, 0.0, DomainViolation),
])
def test_threshold_domain(alpha, sigma, err):
    with pytest.raises(err):
        morality_threshold_aligned(alpha, sigma)


def test_threshold_outside_band_is_region_mismatch():
    with pytest.raises(RegionMismatch):
        morality_threshold_aligned(0.2, 0.5)
    with pytest.raises(RegionMismatch):
        threshold_comparative_statics(0.6667, 0.5, h=1e-3)


@pytest.mark.parametrize("alpha, sign_sigma", [(0.6, -1), (0.4, 1)])
def test_comparative_statics_signs(alpha, sign_sigma):
    d_alpha, d_sigma = threshold_comparative_statics(alpha, 0.5, h=1e-5)
    assert d_alpha < 0
    assert np.sign(d_sigma) == sign_sigma


def test_tax_bases():
    m = make_model(sigma=0.5, kappa=0.4, values=Aligned(0.6))
    assert equilibrium_tax_base(m, 1, 0.6) == pytest.approx(0.328947, abs=5e-7)
    assert equilibrium_tax_base(m, 0, 0.6) == pytest.approx(0.288462, abs=5e-7)
    m0 = m.with_kappa(0.0)
    assert equilibrium_tax_base(m0, 1, 0.6) == equilibrium_tax_base(m0, 0, 0.6) == 0.25


def test_unaligned_contested_common_interest():
    m = make_model(sigma=0.5, kappa=0.0, values=Unaligned(1.0, 0.2))
    r = classify_unaligned(m, 1.0, 0.2)
    assert r.tag is RegionTag.CONTESTED_COMMON_INTEREST
    assert r.cutoff == pytest.approx(5 / 3, abs=1e-12)
    # the corner comparison says provision below the cutoff
    assert r.provision_above_cutoff is False
    assert r.direction_conflict
    assert r.g_star == 1 and r.stated_g_star == 0
    assert r.conflict_at_kappa


def test_unaligned_contested_transfer():
    m = make_model(sigma=0.5, values=Unaligned(0.4, 0.6))
    r = classify_unaligned(m, 0.4, 0.6)
    assert r.tag is RegionTag.CONTESTED_TRANSFER
    assert r.cutoff == pytest.approx(1.0, abs=1e-12)
    assert r.provision_above_cutoff is True and not r.direction_conflict


@pytest.mark.parametrize("kappa", [0.0, 0.5, 0.9])
def test_unaligned_weak(kappa):
    m = make_model(sigma=0.5, kappa=kappa, values=Unaligned(0.5, 0.2))
    assert classify_unaligned(m, 0.5, 0.2).tag is RegionTag.WEAK
    assert optimal_allocation(m).g_star == 0


def test_unaligned_knife_edge_is_a_region():
    # alpha_E * s == theta * alpha_C  <=>  alpha_C = sigma * alpha_E
    m = make_model(sigma=0.5, kappa=0.3, values=Unaligned(0.8, 0.4))
    r = classify_unaligned(m, 0.8, 0.4)
    assert r.tag is RegionTag.KNIFE_EDGE
    assert r.cutoff is None


def test_unaligned_common_interest():
    m = make_model(sigma=0.5, kappa=0.3, values=Unaligned(1.0, 0.8))
    assert classify_unaligned(m, 1.0, 0.8).tag is RegionTag.COMMON_INTEREST
    assert optimal_allocation(m).g_star == 1


def test_unaligned_direction_follows_values():
    m = make_model(sigma=0.5, kappa=0.0, values=Unaligned(1.0, 0.2))
    dec = optimal_allocation(m)
    assert dec.v1 > dec.v0 and dec.g_star == 1
    assert brute_force_allocation(m, 1.0, 0.2) == 1


weak_band = dict(sigma=st.floats(0.05, 0.95), u=st.floats(0.01, 0.99))


def _alpha_in_band(sigma, u):
    th = theta(sigma)
    s = sigma * th
    return s + u * (th - s)


@given(**weak_band)
def test_threshold_in_range(sigma, u):
    a = _alpha_in_band(sigma, u)
    k = morality_threshold_aligned(a, sigma)
    assert 0 <= k < 1 / a


@given(**weak_band)
def test_threshold_matches_bisection(sigma, u):
    a = _alpha_in_band(sigma, u)
    k = morality_threshold_aligned(a, sigma)
    assume(k < 0.99 * min(1.0, 1.0 / a) and k > 1e-3)
    m = make_model(sigma=sigma, values=Aligned(a))
    assert bisect_threshold(m, a) == pytest.approx(k, abs=1e-9)


@given(**weak_band, scale=st.floats(0.1, 10), kfrac=st.floats(0, 0.98))
def test_allocation_scale_invariant(sigma, u, scale, kfrac):
    a = _alpha_in_band(sigma, u)
    kappa = kfrac * min(1.0, 1.0 / a)
    g1 = optimal_allocation(make_model(1, 1, sigma, kappa, Aligned(a))).g_star
    g2 = optimal_allocation(make_model(scale, 1 / scale * 3, sigma, kappa, Aligned(a))).g_star
    assert g1 == g2


@given(alpha=st.floats(0.05, 2), sigma=st.floats(0.05, 0.95), k1=st.floats(0, 0.98), k2=st.floats(0, 0.98))
def test_tax_base_expansion(alpha, sigma, k1, k2):
    cap = min(1.0, 1.0 / alpha)
    lo, hi = sorted((k1 * cap, k2 * cap))
    assume(hi - lo > 1e-6)
    m_lo = make_model(sigma=sigma, kappa=lo, values=Aligned(alpha))
    m_hi = make_model(sigma=sigma, kappa=hi, values=Aligned(alpha))
    for g in (0, 1):
        assert equilibrium_tax_base(m_lo, g, alpha) < equilibrium_tax_base(m_hi, g, alpha)
    if alpha > m_hi.s:
        assert equilibrium_tax_base(m_hi, 1, alpha) > equilibrium_tax_base(m_hi, 0, alpha)


@given(v0=st.floats(0.01, 10), rel=st.floats(-1e-6, 1e-6))
def test_tie_rule(v0, rel):
    from fiscap.elite import _is_tie
    v1 = v0 * (1 + rel)
    assert _is_tie(v0, v1) == (abs(v1 - v0) <= 1e-12 * max(1.0, abs(v0)))

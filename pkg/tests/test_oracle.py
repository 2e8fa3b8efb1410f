import inspect

import pytest

from fiscap import Aligned, Policy, TwoState, classify_equilibrium, make_model
from fiscap import oracle
from fiscap.oracle import (
    GridSpec, GridTooCoarse, OracleReport, agreement_suite, brute_force_allocation, brute_force_peak,
    brute_force_report, golden_section_max, make_report, verify_pbe,
)
from fiscap.signaling import EquilibriumTag


def test_brute_force_report_examples(fig1):
    assert brute_force_report(fig1, Policy(0.5, 1.0), 1.5) == pytest.approx(0.65, abs=1e-6)
    selfish = fig1.with_kappa(0.0)
    assert brute_force_report(selfish, Policy(0.5, 1.0), 1.5) == pytest.approx(0.5, abs=1e-6)
    assert brute_force_report(selfish, Policy(2.0, 1.0), 1.5) == 0.0


def test_report_grid_must_cover(fig1):
    with pytest.raises(GridTooCoarse):
        brute_force_report(fig1, Policy(0.5, 1.0), 1.5, GridSpec(lo=0.0, hi=1.0))
    with pytest.raises(GridTooCoarse):
        brute_force_report(fig1, Policy(0.5, 1.0), 1.5, GridSpec(step=5.0))


@pytest.mark.parametrize("kappa, g, t_hat, T_hat", [
    (0.2, 1.0, 0.714286, 0.357143), (0.0, 1.0, 0.5, 0.25), (0.2, 0.0, 0.509259, 0.254630),
])
def test_brute_force_peak_examples(fig1, kappa, g, t_hat, T_hat):
    t, T = brute_force_peak(fig1.with_kappa(kappa), g, 1.5)
    assert t == pytest.approx(t_hat, abs=1e-6)
    assert T == pytest.approx(T_hat, abs=1e-6)


@pytest.mark.parametrize("alpha, kappa, g", [(0.6, 0.4, 1), (0.2, 0.3, 0)])
def test_brute_force_allocation_aligned(alpha, kappa, g):
    assert brute_force_allocation(make_model(sigma=0.5, kappa=kappa, values=Aligned(alpha)), alpha) == g


def test_brute_force_allocation_unaligned_direction():
    m = make_model(sigma=0.5, kappa=0.0)
    assert brute_force_allocation(m, 1.0, 0.2) == 1


def test_golden_section_on_quadratic():
    x = golden_section_max(lambda v: -(v - 0.3) ** 2, 0.0, 1.0, 60)
    assert x == pytest.approx(0.3, abs=1e-9)
    # corner maximum
    assert golden_section_max(lambda v: -v, 0.0, 1.0, 60) == 0.0


def _ws(kappa, rho=0.5):
    return make_model(1, 1, 0.5, kappa, TwoState(0.2, 0.6, rho))


def test_verify_pbe_separation_passes():
    m = _ws(0.5)
    reports = verify_pbe(classify_equilibrium(m, 0.2, 0.6, 0.5), m, 0.2, 0.6, 0.5)
    assert len(reports) == 4
    assert all(r.passed for r in reports)
    gains = {r.target: r.closed_form for r in reports if r.target.endswith("deviation_ic")}
    assert gains["pbe.separation.high.deviation_ic"] == pytest.approx(0.014286, abs=5e-7)
    assert gains["pbe.separation.low.deviation_ic"] == pytest.approx(0.128571, abs=5e-7)


def test_verify_pbe_separation_candidate_fails_below_threshold():
    m = _ws(0.2)
    reports = verify_pbe(EquilibriumTag.SEPARATION, m, 0.2, 0.6, 0.5)
    high = [r for r in reports if r.target == "pbe.separation.high.deviation_ic"][0]
    assert high.ic_holds is False and not high.passed


def test_verify_pbe_pooling_provision_candidate_fails_low_type():
    m = _ws(1.5)
    reports = verify_pbe(EquilibriumTag.POOLING_PROVISION, m, 0.2, 0.6, 0.5)
    low = [r for r in reports if r.target == "pbe.pooling_provision.low.deviation_ic"][0]
    assert low.ic_holds is False


def test_verify_pbe_no_pure_rules_out_every_profile():
    m = _ws(1.5)
    eq = classify_equilibrium(m, 0.2, 0.6, 0.5)
    reports = verify_pbe(eq, m, 0.2, 0.6, 0.5)
    assert len(reports) == 3
    assert all(r.passed and r.ic_holds for r in reports)


def test_report_passed_flag():
    assert make_report("x", 1.0, 1.0 + 5e-7, 1e-6).passed
    assert not make_report("x", 1.0, 1.0 + 2e-6, 1e-6).passed
    assert not make_report("x", 1.0, 1.0, 1e-6, ic_holds=False).passed
    r = make_report("x", 1.0, 1.5, 1.0, (0.0, 1.0, 1e-3, 60))
    assert isinstance(r, OracleReport) and r.to_dict()["grid_spec"] == [0.0, 1.0, 1e-3, 60]


def test_oracle_independent_of_closed_forms():
    forbidden = {"laffer_peak_rate", "laffer_peak_revenue", "morality_threshold_aligned",
                 "threshold_set", "weak_high_thresholds", "pooling_thresholds"}
    # the checks compare against the closed forms; the brute-force routines themselves must not use them
    brute_src = "".join(inspect.getsource(f) for f in (
        oracle.brute_force_report, oracle.brute_force_peak, oracle.brute_force_elite_value,
        oracle.brute_force_allocation, oracle.bisect_threshold, oracle.brute_force_gains,
        oracle.grid_then_golden, oracle.golden_section_max, oracle.revenue_support))
    for name in forbidden:
        assert name not in brute_src


def test_agreement_suite_small_and_deterministic():
    a = agreement_suite(seed=7, draws=20)
    b = agreement_suite(seed=7, draws=20)
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]
    assert all(r.passed for r in a)
    targets = {r.target.split(".")[0] for r in a}
    assert targets == {"citizen", "fiscal", "elite", "signaling", "pbe"}


def test_agreement_suite_seed_matters():
    a = agreement_suite(seed=1, draws=3)
    b = agreement_suite(seed=2, draws=3)
    assert [r.oracle_value for r in a] != [r.oracle_value for r in b]

"""Period-by-period timeline of the dynamic game.

The elite plays its (myopic) equilibrium action for the realized state,
citizens form the strategy-consistent posterior, and the tax rate is the
revenue-maximizing rate for the observed allocation and that posterior.
The prior is held fixed at ``rho0``: the equilibrium profile is computed
once, so records are stationary unless the state itself changes.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .citizen import optimal_report
from .core import FiscapError, Policy, ValidatedModel
from .fiscal import laffer_peak_rate, revenue
from .signaling import STRATEGY_OF_TAG, EquilibriumTag, classify_equilibrium, posterior


class NoEquilibrium(FiscapError):
    pass


class InfeasibleScenario(FiscapError, ValueError):
    pass


class IndexOutOfRange(FiscapError, IndexError):
    pass


@dataclass(frozen=True)
class Scenario:
    model: ValidatedModel
    alpha_L: float
    alpha_H: float
    rho0: float
    horizon: int
    shock_period: int | None = None
    initial_state: str = "low"

    def __post_init__(self):
        if self.horizon < 1:
            raise InfeasibleScenario(f"horizon={self.horizon} must be >= 1")
        if self.initial_state not in ("low", "high"):
            raise InfeasibleScenario(f"initial_state must be 'low' or 'high', got {self.initial_state!r}")
        if self.shock_period is not None:
            if not 0 <= self.shock_period < self.horizon:
                raise InfeasibleScenario(
                    f"shock_period={self.shock_period} must lie in [0, {self.horizon})")
            if self.initial_state != "low":
                raise InfeasibleScenario("a shock switches alpha_L to alpha_H; start in the low state")


@dataclass(frozen=True)
class PeriodRecord:
    period: int
    alpha: float
    g: int
    posterior: float
    tax_rate: float
    report: float
    tax_base: float
    tag: str


@dataclass
class Trajectory:
    records: list[PeriodRecord]
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.records)

    @property
    def tax_bases(self) -> list[float]:
        return [r.tax_base for r in self.records]

    def to_dict(self) -> dict:
        return {"metadata": dict(self.metadata), "records": [asdict(r) for r in self.records]}


def _action(tag: EquilibriumTag, is_high: bool) -> int:
    if tag is EquilibriumTag.POOLING_RENTS:
        return 0
    if tag is EquilibriumTag.POOLING_PROVISION:
        return 1
    return 1 if is_high else 0


def run_timeline(scenario: Scenario) -> Trajectory:
    sc = scenario
    m = sc.model
    eq = classify_equilibrium(m, sc.alpha_L, sc.alpha_H, sc.rho0)
    if eq.tag is EquilibriumTag.NO_PURE_EQUILIBRIUM:
        raise NoEquilibrium(
            f"no pure-strategy equilibrium at kappa={m.kappa} (regime {eq.regime.value})")
    strategy = STRATEGY_OF_TAG[eq.tag]

    records = []
    for period in range(sc.horizon):
        is_high = sc.initial_state == "high" or (
            sc.shock_period is not None and period >= sc.shock_period)
        alpha = sc.alpha_H if is_high else sc.alpha_L
        g = _action(eq.tag, is_high)
        p = posterior(strategy, g, sc.alpha_L, sc.alpha_H, sc.rho0)
        t = laffer_peak_rate(m, g, p)
        policy = Policy(t, g)
        records.append(PeriodRecord(
            period=period, alpha=alpha, g=g, posterior=p, tax_rate=t,
            report=optimal_report(m, policy, p).report,
            tax_base=revenue(m, policy, p), tag=eq.tag.value,
        ))

    metadata = {
        "regime": eq.regime.value,
        "tag": eq.tag.value,
        "kappa": m.kappa,
        "sigma": m.sigma,
        "rho0": sc.rho0,
        "shock_period": sc.shock_period,
        # a mid-run state switch is not part of the base game
        "extension": sc.shock_period is not None,
    }
    return Trajectory(records=records, metadata=metadata)


def trajectory_jump(traj: Trajectory, period: int) -> float:
    """tax_base[period] / tax_base[period - 1]."""
    if not 1 <= period < len(traj):
        raise IndexOutOfRange(f"period {period} outside [1, {len(traj) - 1}]")
    return traj.records[period].tax_base / traj.records[period - 1].tax_base

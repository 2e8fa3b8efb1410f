"""Solvers and brute-force checks for a Homo Moralis model of tax compliance and fiscal capacity."""

from .core import (
    Aligned,
    DomainViolation,
    FiscapError,
    KappaInfeasible,
    ModelParams,
    PhiInfeasible,
    Policy,
    RegionMismatch,
    TwoState,
    Unaligned,
    ValidatedModel,
    make_model,
    phi,
    theta,
    validate,
)
from .citizen import hm_utility, optimal_report, universalized_components
from .fiscal import laffer_curve, laffer_peak_rate, laffer_peak_revenue, revenue
from .elite import (
    classify_unaligned,
    elite_value,
    equilibrium_tax_base,
    morality_threshold_aligned,
    optimal_allocation,
    threshold_comparative_statics,
)
from .signaling import (
    EquilibriumTag,
    Regime,
    Strategy,
    classify_equilibrium,
    jump_factor,
    pooling_thresholds,
    posterior,
    provision_gain,
    weak_high_thresholds,
)
from .sim import Scenario, run_timeline, trajectory_jump

__version__ = "0.1.0"

"""Equilibrium and pricing solver for an unobservable single-server queue
where customers may pay to inspect the queue length before joining."""

from .access import (
    JoinEquilibrium,
    JoinRegime,
    PricingResult,
    join_equilibrium,
    optimal_access_fee,
    revenue_access,
)
from .equilibrium import (
    Branch,
    EquilibriumResult,
    QuadraticCoeffs,
    equilibrium_bisect,
    equilibrium_closed_form,
    quadratic_coeffs,
    solve_equilibrium,
)
from .errors import (
    DivergenceDetected,
    DomainError,
    InspectqError,
    InvalidParams,
    NeedsBisection,
    UnstableRegime,
)
from .info import (
    HeuristicTrace,
    StopReason,
    optimize_info_fee_heuristic,
    optimize_info_fee_refine,
    revenue_info,
)
from .model import (
    DerivedParams,
    StationaryDistribution,
    SystemParams,
    derive,
    pi0,
    stationary_distribution,
    utility_inspect,
    utility_no_inspect,
)
from .policy import PolicyReport, PolicyRow, Winner, compare_policies, find_thresholds
from .sim import SimConfig, SimStats, ValidationReport, simulate, validate_against_analytic

__all__ = [name for name in dir() if not name.startswith("_")]

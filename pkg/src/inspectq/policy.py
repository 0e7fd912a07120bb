"""Mechanism comparison: charge admission or charge the information?

Sweeps the waiting cost, optimizes both mechanisms at each value and
locates the crossing(s) of the two optimal-revenue curves.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from scipy.optimize import brentq

from .access import optimal_access_fee
from .info import optimize_info_fee_refine
from .model import SystemParams

TIE_TOL = 1e-9
THRESHOLD_TOL = 1e-4


class Winner(enum.Enum):
    ACCESS = "access"
    INFO = "info"
    TIE = "tie"


@dataclass(frozen=True)
class PolicyRow:
    wait_cost: float
    ra_star: float
    ri_star: float
    winner: Winner


@dataclass(frozen=True)
class PolicyReport:
    rows: list[PolicyRow]
    thresholds: list[float]
    excess_crossings: bool  # more sign changes than the expected <= 2


def _winner(ra: float, ri: float) -> Winner:
    if abs(ra - ri) <= TIE_TOL:
        return Winner.TIE
    return Winner.ACCESS if ra > ri else Winner.INFO


def compare_policies(params: SystemParams) -> tuple[float, float, Winner]:
    """Optimal revenue of each mechanism and which one wins."""
    ra = optimal_access_fee(params).optimal_revenue
    ri = optimize_info_fee_refine(params).optimal_revenue
    return ra, ri, _winner(ra, ri)


def _revenue_gap(params: SystemParams, cw: float) -> float:
    p = params.with_(wait_cost=cw)
    return (
        optimal_access_fee(p).optimal_revenue
        - optimize_info_fee_refine(p).optimal_revenue
    )


def find_thresholds(
    params: SystemParams, cw_lo: float, cw_hi: float, grid_n: int = 64
) -> PolicyReport:
    """Sweep C_W and refine every sign change of R_A* - R_I* by bisection."""
    if not (0.0 < cw_lo < cw_hi):
        raise ValueError("need 0 < cw_lo < cw_hi")
    if grid_n < 16:
        raise ValueError("grid_n must be at least 16")

    cws = [cw_lo + (cw_hi - cw_lo) * k / (grid_n - 1) for k in range(grid_n)]
    rows = []
    for cw in cws:
        p = params.with_(wait_cost=cw)
        ra = optimal_access_fee(p).optimal_revenue
        ri = optimize_info_fee_refine(p).optimal_revenue
        rows.append(PolicyRow(wait_cost=cw, ra_star=ra, ri_star=ri, winner=_winner(ra, ri)))

    thresholds = []
    for a, b in zip(rows, rows[1:]):
        ga, gb = a.ra_star - a.ri_star, b.ra_star - b.ri_star
        if ga == 0.0:
            thresholds.append(a.wait_cost)
        elif ga * gb < 0.0:
            thresholds.append(
                brentq(
                    lambda cw: _revenue_gap(params, cw),
                    a.wait_cost,
                    b.wait_cost,
                    xtol=THRESHOLD_TOL,
                )
            )
    return PolicyReport(
        rows=rows, thresholds=thresholds, excess_crossings=len(thresholds) > 2
    )

"""Information pricing: revenue from selling the queue-length signal.

Revenue at price c is lam * p*(c) * c with p* the population inspection
equilibrium.  The optimizer is a fixed-step ascent that stops at the
first non-increase, followed by a golden-section refinement inside the
bracket around the best step (with a dense-grid fallback when the
three-point unimodality check fails).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .access import FeeCandidate, PricingResult
from .equilibrium import solve_equilibrium
from .model import SystemParams

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_GRID_FALLBACK_POINTS = 10_000


class StopReason(enum.Enum):
    REVENUE_DECREASED = "revenue-decreased"
    UPPER_BOUND_HIT = "upper-bound-hit"


@dataclass(frozen=True)
class HeuristicTrace:
    step: float
    evaluations: list[tuple[float, float, float]]  # (c_i, p_star, revenue)
    stop_reason: StopReason
    best: tuple[float, float]  # (c_i, revenue)


def revenue_info(params: SystemParams, c_i: float) -> float:
    """Provider revenue per unit time at information price c_i."""
    if c_i < 0:
        raise ValueError("information price must be non-negative")
    p_star = solve_equilibrium(params.with_(inspect_cost=c_i)).p_star
    return params.lam * p_star * c_i


def optimize_info_fee_heuristic(
    params: SystemParams, step: float | None = None, c_i_max: float | None = None
) -> HeuristicTrace:
    """Fixed-step ascent from c=0, stopping at the first revenue non-increase."""
    if step is None:
        step = 1e-2 * params.reward
    if c_i_max is None:
        c_i_max = params.reward
    if step <= 0 or c_i_max <= 0:
        raise ValueError("step and c_i_max must be positive")

    evaluations: list[tuple[float, float, float]] = []
    prev_revenue = None
    c = 0.0
    stop = StopReason.UPPER_BOUND_HIT
    while c <= c_i_max + 1e-12 * c_i_max:
        p_star = solve_equilibrium(params.with_(inspect_cost=c)).p_star
        revenue = params.lam * p_star * c
        evaluations.append((c, p_star, revenue))
        if prev_revenue is not None and revenue <= prev_revenue:
            stop = StopReason.REVENUE_DECREASED
            break
        prev_revenue = revenue
        c += step
    best = max(evaluations, key=lambda e: e[2])
    return HeuristicTrace(
        step=step, evaluations=evaluations, stop_reason=stop, best=(best[0], best[2])
    )


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)


def optimize_info_fee_refine(
    params: SystemParams, tol: float = 1e-6, c_i_max: float | None = None
) -> PricingResult:
    """Heuristic pass plus golden-section refinement of the winning bracket."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if c_i_max is None:
        c_i_max = params.reward
    trace = optimize_info_fee_heuristic(params, c_i_max=c_i_max)
    c_best, r_best = trace.best
    if r_best <= 0.0:
        return PricingResult(
            optimal_fee=0.0,
            optimal_revenue=0.0,
            candidates=[FeeCandidate(fee=0.0, revenue=0.0, valid=True)],
        )

    lo = max(0.0, c_best - trace.step)
    hi = min(c_i_max, c_best + trace.step)
    f = lambda c: revenue_info(params, c)
    unimodal = r_best >= f(lo) and r_best >= f(hi)
    if unimodal:
        fee, revenue = _golden_max(f, lo, hi, tol)
    else:
        # bracket violated: fall back to a dense scan of the whole range
        n = _GRID_FALLBACK_POINTS
        pts = [(c_i_max * k / n, f(c_i_max * k / n)) for k in range(n + 1)]
        fee, revenue = max(pts, key=lambda t: t[1])
    if revenue < r_best:
        fee, revenue = c_best, r_best
    return PricingResult(
        optimal_fee=fee,
        optimal_revenue=revenue,
        candidates=[FeeCandidate(fee=fee, revenue=revenue, valid=True)],
    )

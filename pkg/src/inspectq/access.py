"""Access-fee pricing of the plain unobservable queue.

Customers who face an admission fee join with probability q* determined
by a zero-surplus condition; the provider's revenue is lam * q* * fee.
The optimum is one of two closed-form candidates: the largest fee at
which everyone still joins, or the stationary point of the partial
regime.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .model import SystemParams


class JoinRegime(enum.Enum):
    ALL = "all"
    PARTIAL = "partial"
    NONE = "none"


@dataclass(frozen=True)
class JoinEquilibrium:
    q_star: float
    regime: JoinRegime


@dataclass(frozen=True)
class FeeCandidate:
    fee: float
    revenue: float
    valid: bool


@dataclass(frozen=True)
class PricingResult:
    optimal_fee: float
    optimal_revenue: float
    candidates: list[FeeCandidate]


def _require_stable(params: SystemParams) -> None:
    if params.lam >= params.mu:
        raise DomainError("access pricing requires lam < mu")


def join_equilibrium(params: SystemParams, c_acc: float) -> JoinEquilibrium:
    """Joining probability under admission fee c_acc."""
    _require_stable(params)
    lam, mu, R, cw = params.lam, params.mu, params.reward, params.wait_cost
    if c_acc <= R - cw / (mu - lam):
        return JoinEquilibrium(q_star=1.0, regime=JoinRegime.ALL)
    if c_acc > R - cw / mu:
        return JoinEquilibrium(q_star=0.0, regime=JoinRegime.NONE)
    q = (mu - cw / (R - c_acc)) / lam
    return JoinEquilibrium(q_star=min(1.0, max(0.0, q)), regime=JoinRegime.PARTIAL)


def revenue_access(params: SystemParams, c_acc: float) -> float:
    """Provider revenue per unit time at admission fee c_acc."""
    return params.lam * join_equilibrium(params, c_acc).q_star * c_acc


def optimal_access_fee(params: SystemParams) -> PricingResult:
    """Best admission fee among the two closed-form candidates.

    The boundary candidate R - C_W/(mu-lam) keeps q*=1; the interior
    candidate R - sqrt(R*C_W/mu) is the stationary point of the partial
    regime and only counts when it falls inside that regime's fee
    interval.  A dead market (both candidates <= 0) prices at zero.
    """
    _require_stable(params)
    lam, mu, R, cw = params.lam, params.mu, params.reward, params.wait_cost
    f_boundary = R - cw / (mu - lam)
    f_interior = R - math.sqrt(R * cw / mu)

    candidates = [
        FeeCandidate(
            fee=f_boundary,
            revenue=revenue_access(params, f_boundary) if f_boundary >= 0 else 0.0,
            valid=f_boundary >= 0.0,
        ),
        FeeCandidate(
            fee=f_interior,
            revenue=revenue_access(params, f_interior) if f_interior >= 0 else 0.0,
            valid=(
                f_interior >= 0.0
                and max(f_boundary, 0.0) <= f_interior <= R - cw / mu
            ),
        ),
    ]
    valid = [c for c in candidates if c.valid]
    if not valid:
        return PricingResult(optimal_fee=0.0, optimal_revenue=0.0, candidates=candidates)
    # ties go to the smaller fee
    best = min(valid, key=lambda c: (-c.revenue, c.fee))
    return PricingResult(
        optimal_fee=best.fee, optimal_revenue=best.revenue, candidates=candidates
    )

"""Symmetric Nash equilibrium of the inspection game.

The interior equilibrium solves U_I(p) = U_NI(p).  In the variable
P = 1 - p this reduces to a quadratic K3*P^2 + K4*P + K5 = 0 whose
smaller root yields the candidate equilibrium; the larger root always
lies above 1 and is rejected.  A bisection solver on
g(p) = U_I(p) - U_NI(p) serves both as cross-check and as fallback for
the cases the quadratic excludes (rho >= 1, n_e = 0, C_I = 0, or a
non-positive discriminant).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError, NeedsBisection
from .model import SystemParams, derive, utility_inspect, utility_no_inspect

INTERIOR_RESIDUAL_TOL = 1e-9
BISECT_RESIDUAL_TOL = 1e-11
_SCAN_POINTS = 64


class Branch(enum.Enum):
    INTERIOR = "interior"
    CLAMPED_ZERO = "clamped-zero"
    CLAMPED_ONE = "clamped-one"
    BISECTED = "bisected"


@dataclass(frozen=True)
class QuadraticCoeffs:
    k1: float
    k2: float
    k3: float
    k4: float
    k5: float
    delta: float

    def roots(self) -> tuple[float, float]:
        """(P1, P2) with P1 <= P2, computed cancellation-free.

        P2 = (-k4 + sqrt(delta)) / (2 k3) never cancels (k4 < 0 in the
        valid domain); P1 follows from the product of roots k5/k3.
        """
        if self.delta < 0:
            raise NeedsBisection("negative discriminant")
        sq = math.sqrt(self.delta)
        q = -0.5 * (self.k4 - sq) if self.k4 < 0 else -0.5 * (self.k4 + sq)
        r1, r2 = self.k5 / q, q / self.k3
        return (r1, r2) if r1 <= r2 else (r2, r1)


@dataclass(frozen=True)
class EquilibriumResult:
    p_star: float
    branch: Branch
    residual: float | None = None
    roots: tuple[float, float] | None = None


def quadratic_coeffs(params: SystemParams) -> QuadraticCoeffs:
    """Coefficients of the equilibrium quadratic in P = 1 - p."""
    d = derive(params)
    rho, n_e = d.rho, d.n_e
    if not (0.0 < rho < 1.0) or n_e < 1 or params.inspect_cost <= 0.0:
        raise DomainError(
            "quadratic requires rho in (0,1), n_e >= 1 and inspect_cost > 0"
        )
    R, cw, mu, ci = params.reward, params.wait_cost, params.mu, params.inspect_cost
    k1 = rho**n_e * (cw * (n_e + 1) - R * mu)
    k2 = ci * (1.0 - rho ** (n_e + 1))
    k3 = mu * ci * (1.0 - rho**n_e) * rho**2
    k4 = -(
        ci * (1.0 - rho**n_e) * rho * mu
        + k2 * rho * mu
        + (1.0 - rho) * (rho ** (n_e + 1) * cw - k1 * rho)
    )
    k5 = k2 * mu - k1 * (1.0 - rho)
    delta = k4 * k4 - 4.0 * k3 * k5
    return QuadraticCoeffs(k1=k1, k2=k2, k3=k3, k4=k4, k5=k5, delta=delta)


def gap(params: SystemParams, p: float) -> float:
    """g(p) = U_I(p) - U_NI(p); positive where inspecting is the better reply."""
    return utility_inspect(params, p) - utility_no_inspect(params, p)


def _clamp(params: SystemParams, roots=None) -> EquilibriumResult:
    """Endpoint equilibrium when g has constant sign on [0, 1]."""
    if gap(params, 1.0) >= 0.0:
        return EquilibriumResult(p_star=1.0, branch=Branch.CLAMPED_ONE, roots=roots)
    if gap(params, 0.0) <= 0.0:
        return EquilibriumResult(p_star=0.0, branch=Branch.CLAMPED_ZERO, roots=roots)
    # g changes sign yet the quadratic put its root outside [0,1]:
    # numerically inconsistent, defer to the bracketed solver
    raise NeedsBisection("sign change without an in-range root")


def equilibrium_closed_form(params: SystemParams) -> EquilibriumResult:
    """Equilibrium from the quadratic; NeedsBisection outside its domain."""
    coeffs = quadratic_coeffs(params)  # raises DomainError outside preconditions
    if coeffs.delta <= 0.0:
        raise NeedsBisection("discriminant <= 0")
    p1_root, p2_root = coeffs.roots()
    p_cand = 1.0 - p1_root
    if 0.0 <= p_cand <= 1.0:
        residual = abs(gap(params, p_cand))
        if residual >= INTERIOR_RESIDUAL_TOL:
            # rounding in the coefficient algebra; polish against g directly
            refined = _polish(params, p_cand)
            if refined is not None:
                p_cand, residual = refined
        return EquilibriumResult(
            p_star=p_cand,
            branch=Branch.INTERIOR,
            residual=residual,
            roots=(p1_root, p2_root),
        )
    return _clamp(params, roots=(p1_root, p2_root))


def _polish(params: SystemParams, p0: float) -> tuple[float, float] | None:
    """Re-solve g = 0 in a small bracket around a near-root."""
    width = 1e-6
    while width <= 0.3:
        lo, hi = max(0.0, p0 - width), min(1.0, p0 + width)
        if gap(params, lo) * gap(params, hi) < 0:
            p = brentq(lambda x: gap(params, x), lo, hi, xtol=1e-16, rtol=8.9e-16)
            return p, abs(gap(params, p))
        width *= 10.0
    return None


def equilibrium_bisect(params: SystemParams) -> EquilibriumResult:
    """Root of g(p) on the admissible p-interval by bracketed bisection.

    Valid for every parameter set, including rho >= 1 (where the bracket's
    left end is pushed just inside the stationarity region) and C_I = 0.
    """
    d = derive(params)
    p_lo = 0.0 if d.rho < 1.0 else 1.0 - 1.0 / d.rho + 1e-9
    g_lo, g_hi = gap(params, p_lo), gap(params, 1.0)

    # single sign change per the avoid-the-crowd structure; scan for the
    # first bracket deterministically
    if g_lo == 0.0:
        return EquilibriumResult(p_star=p_lo, branch=Branch.BISECTED, residual=0.0)
    grid = [p_lo + (1.0 - p_lo) * k / _SCAN_POINTS for k in range(_SCAN_POINTS + 1)]
    vals = [g_lo] + [gap(params, p) for p in grid[1:-1]] + [g_hi]
    for (pa, ga), (pb, gb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if ga == 0.0:
            return EquilibriumResult(p_star=pa, branch=Branch.BISECTED, residual=0.0)
        if ga * gb < 0.0:
            p = brentq(lambda x: gap(params, x), pa, pb, xtol=1e-16, rtol=8.9e-16)
            return EquilibriumResult(
                p_star=p, branch=Branch.BISECTED, residual=abs(gap(params, p))
            )
    if g_hi >= 0.0:
        return EquilibriumResult(p_star=1.0, branch=Branch.CLAMPED_ONE)
    return EquilibriumResult(p_star=p_lo if p_lo > 0.0 else 0.0,
                             branch=Branch.CLAMPED_ZERO)


def solve_equilibrium(params: SystemParams) -> EquilibriumResult:
    """Closed form where it applies, bisection everywhere else."""
    if params.inspect_cost == 0.0:
        # inspecting strictly dominates at zero price
        return EquilibriumResult(p_star=1.0, branch=Branch.CLAMPED_ONE)
    try:
        return equilibrium_closed_form(params)
    except (DomainError, NeedsBisection):
        return equilibrium_bisect(params)

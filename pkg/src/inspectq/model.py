"""Closed-form quantities of the inspection queue.

Single-server Markovian queue where each arriving customer either pays to
see the current queue length (and then joins only below the threshold
``n_e = floor(R*mu/C_W)``) or joins blindly.  Everything here is a pure
function of the market parameters and the population inspection
probability ``p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidParams, UnstableRegime

# Below this distance from rho=1 the (1-rho)**2 denominators lose too much
# precision; switch to the dedicated rho=1 formulas.
RHO_ONE_EPS = 1e-9


@dataclass(frozen=True)
class SystemParams:
    """Primitive market and queue parameters.

    lam: Poisson arrival rate, mu: exponential service rate, reward:
    service valuation R, wait_cost: cost per unit time in system,
    inspect_cost: price of the queue-length signal, access_fee: price of
    admission (used only by the access-pricing module).
    """

    lam: float
    mu: float
    reward: float
    wait_cost: float
    inspect_cost: float = 0.0
    access_fee: float = 0.0

    def __post_init__(self):
        if not (self.lam > 0 and self.mu > 0 and self.reward > 0 and self.wait_cost > 0):
            raise InvalidParams(
                "lam, mu, reward and wait_cost must be strictly positive"
            )
        if self.inspect_cost < 0 or self.access_fee < 0:
            raise InvalidParams("inspect_cost and access_fee must be non-negative")

    def with_(self, **kwargs) -> "SystemParams":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class DerivedParams:
    rho: float
    n_e: int
    stable_at_p0: bool  # whether p=0 lies inside the stationarity domain

    def eta(self, p: float) -> float:
        return 1.0 - (1.0 - p) * self.rho


def derive(params: SystemParams) -> DerivedParams:
    """Utilization, joining threshold and the eta(p) evaluator."""
    rho = params.lam / params.mu
    n_e = math.floor(params.reward * params.mu / params.wait_cost)
    return DerivedParams(rho=rho, n_e=n_e, stable_at_p0=rho < 1.0)


def _check_stationary(rho: float, p: float) -> float:
    """Return eta(p), raising UnstableRegime when (1-p)*rho >= 1."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParams(f"p={p} outside [0,1]")
    eta = 1.0 - (1.0 - p) * rho
    if eta <= 0.0:
        raise UnstableRegime(f"(1-p)*rho = {(1.0 - p) * rho} >= 1")
    return eta


def _is_rho_one(rho: float) -> bool:
    return abs(rho - 1.0) < RHO_ONE_EPS


def pi0(params: SystemParams, p: float) -> float:
    """Stationary probability of an empty system."""
    d = derive(params)
    eta = _check_stationary(d.rho, p)
    rho, n_e = d.rho, d.n_e
    if _is_rho_one(rho):
        return eta / (n_e * eta + 1.0)
    head = (1.0 - rho**n_e) / (1.0 - rho)
    return 1.0 / (head + rho**n_e / eta)


@dataclass(frozen=True)
class StationaryDistribution:
    """Truncated stationary vector plus its analytic geometric tail."""

    pi0: float
    probabilities: np.ndarray = field(repr=False)
    tail_mass: float
    n_e: int
    rho: float
    eta: float

    def pmf(self, i: int) -> float:
        """Exact stationary probability of state i (not truncated)."""
        if i <= self.n_e - 1:
            return self.rho**i * self.pi0
        return self.rho**self.n_e * (1.0 - self.eta) ** (i - self.n_e) * self.pi0


def stationary_distribution(
    params: SystemParams, p: float, tail_eps: float = 1e-12
) -> StationaryDistribution:
    """Materialize pi up to a state where the closed-form tail mass < tail_eps."""
    d = derive(params)
    eta = _check_stationary(d.rho, p)
    rho, n_e = d.rho, d.n_e
    p0 = pi0(params, p)
    one_minus_eta = 1.0 - eta  # = (1-p)*rho, the tail ratio

    # states 0..n_e-1 are geometric in rho, states >= n_e geometric in (1-eta)
    if one_minus_eta <= 0.0:
        n_max = n_e  # p=1: no mass above n_e
    else:
        # tail mass past N (N >= n_e): pi_{N+1}/(1-ratio) in closed form
        pi_ne = rho**n_e * p0
        extra = 0
        if pi_ne > 0:
            # smallest k with pi_ne * r^(k+1) / eta < tail_eps
            target = tail_eps * eta / pi_ne
            extra = 0 if target >= 1.0 else max(
                0, math.ceil(math.log(target) / math.log(one_minus_eta)) - 1
            )
        n_max = n_e + extra

    idx = np.arange(n_max + 1)
    probs = np.where(
        idx <= n_e - 1,
        rho ** np.minimum(idx, max(n_e - 1, 0)) * p0,
        rho**n_e * one_minus_eta ** np.maximum(idx - n_e, 0) * p0,
    )
    probs = np.asarray(probs, dtype=float)
    if one_minus_eta <= 0.0:
        tail = 0.0
    else:
        tail = float(probs[-1]) * one_minus_eta / eta
    return StationaryDistribution(
        pi0=p0, probabilities=probs, tail_mass=tail, n_e=n_e, rho=rho, eta=eta
    )


def utility_inspect(params: SystemParams, p: float) -> float:
    """Expected net benefit of paying for the queue-length signal.

    Sum over states 0..n_e-1 of pi_i * (R - C_W*(i+1)/mu), minus the
    inspection price.  May be negative.
    """
    d = derive(params)
    eta = _check_stationary(d.rho, p)
    rho, n_e = d.rho, d.n_e
    R, cw, mu, ci = params.reward, params.wait_cost, params.mu, params.inspect_cost
    if n_e == 0:
        return -ci
    if _is_rho_one(rho):
        return n_e * eta * (2.0 * mu * R - cw * (n_e + 1)) / (
            2.0 * mu * (n_e * eta + 1.0)
        ) - ci
    p0 = pi0(params, p)
    head = (1.0 - rho**n_e) / (1.0 - rho)
    ramp = (1.0 - (n_e + 1) * rho**n_e + n_e * rho ** (n_e + 1)) / (1.0 - rho) ** 2
    return p0 * (R * head - (cw / mu) * ramp) - ci


def utility_no_inspect(params: SystemParams, p: float) -> float:
    """Expected net benefit of joining blindly (no balk option)."""
    d = derive(params)
    eta = _check_stationary(d.rho, p)
    rho, n_e = d.rho, d.n_e
    R, cw, mu = params.reward, params.wait_cost, params.mu
    if _is_rho_one(rho):
        return R - (cw / mu) * (
            n_e * (n_e + 1) * eta / (2.0 * (n_e * eta + 1.0)) + 1.0 / eta
        )
    p0 = pi0(params, p)
    ramp = (1.0 - (n_e + 1) * rho**n_e + n_e * rho ** (n_e + 1)) / (1.0 - rho) ** 2
    return R - (cw / mu) * p0 * (ramp + rho**n_e * (n_e * eta + 1.0) / eta**2)

"""Discrete-event oracle for the inspection queue.

Next-event time advance over a single FIFO server.  Each arrival flips
an inspection coin: inspectors see the state and join only below the
joining threshold n_e; everyone else joins blindly.  The run is fully
determined by a 64-bit seed via a counter-based Philox stream, with
exponential variates drawn by inverse CDF, so results are reproducible
across platforms.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import DivergenceDetected, UnstableRegime
from .model import (
    SystemParams,
    derive,
    stationary_distribution,
    utility_inspect,
    utility_no_inspect,
)

STATE_CAP = 1_000_000
_BUF = 8192


@dataclass(frozen=True)
class SimConfig:
    params: SystemParams
    p: float
    horizon_events: int = 1_000_000
    warmup_events: int | None = None  # default: 10% of horizon
    seed: int = 0

    @property
    def warmup(self) -> int:
        if self.warmup_events is None:
            return self.horizon_events // 10
        return self.warmup_events

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be in [0,1]")
        if self.warmup < 0 or self.horizon_events <= self.warmup:
            raise ValueError("need horizon_events > warmup_events >= 0")


@dataclass(frozen=True)
class SimStats:
    empirical_pi: np.ndarray = field(repr=False)
    arrival_pi: np.ndarray = field(repr=False)  # state seen at arrival epochs
    u_inspect_hat: float | None
    u_inspect_se: float | None
    u_no_inspect_hat: float | None
    u_no_inspect_se: float | None
    n_inspect_samples: int
    n_no_inspect_samples: int
    # decomposition of the inspector estimate: conditional mean benefit of
    # inspectors who joined, and the fraction of inspectors who joined
    inspect_joined_mean: float | None
    inspect_join_fraction: float | None
    joined_fraction: float
    max_state_seen: int


class _Uniforms:
    """Buffered scalar draws from one Philox stream, order-preserving."""

    def __init__(self, seed: int):
        self._gen = np.random.Generator(np.random.Philox(seed))
        self._buf = self._gen.random(_BUF)
        self._i = 0

    def next(self) -> float:
        if self._i == _BUF:
            self._buf = self._gen.random(_BUF)
            self._i = 0
        u = self._buf[self._i]
        self._i += 1
        return u


def _mean_se(samples: list[float], batches: int = 32) -> tuple[float | None, float | None]:
    """Sample mean with a batch-means standard error.

    Consecutive per-customer benefits are autocorrelated (they share queue
    excursions), so the naive iid standard error understates the sampling
    noise; contiguous batch means are close to independent at these run
    lengths.
    """
    n = len(samples)
    if n == 0:
        return None, None
    mean = sum(samples) / n
    if n == 1:
        return mean, None
    if n < 4 * batches:
        var = sum((x - mean) ** 2 for x in samples) / (n - 1)
        return mean, math.sqrt(var / n)
    width = n // batches
    means = [
        sum(samples[k * width : (k + 1) * width]) / width for k in range(batches)
    ]
    grand = sum(means) / batches
    var_b = sum((m - grand) ** 2 for m in means) / (batches - 1)
    return mean, math.sqrt(var_b / batches)


def simulate(config: SimConfig) -> SimStats:
    """Run one seeded trajectory and return time-weighted statistics."""
    params, p = config.params, config.p
    lam, mu = params.lam, params.mu
    R, cw, ci = params.reward, params.wait_cost, params.inspect_cost
    n_e = derive(params).n_e
    rng = _Uniforms(config.seed)

    def exp_draw(rate: float) -> float:
        return -math.log(1.0 - rng.next()) / rate

    t = 0.0
    state = 0
    next_arrival = exp_draw(lam)
    next_departure = math.inf
    # per joined customer: (arrival_time, inspected, counts) in FIFO order
    in_system: deque = deque()

    occupancy: dict[int, float] = {}
    arrival_counts: dict[int, int] = {}
    u_i_samples: list[float] = []
    u_ni_samples: list[float] = []
    inspect_joined_sum = 0.0
    inspect_joined_n = 0
    inspect_balked_n = 0
    arrivals_counted = 0
    joined_counted = 0
    max_state = 0

    warmup = config.warmup
    for event_idx in range(config.horizon_events):
        t_next = min(next_arrival, next_departure)
        if event_idx >= warmup:
            occupancy[state] = occupancy.get(state, 0.0) + (t_next - t)
        t = t_next

        if next_arrival <= next_departure:
            # arrival
            counts = event_idx >= warmup
            if counts:
                arrival_counts[state] = arrival_counts.get(state, 0) + 1
                arrivals_counted += 1
            inspects = rng.next() < p
            if inspects and state > n_e - 1:
                if counts:
                    u_i_samples.append(-ci)  # paid for the signal, balked
                    inspect_balked_n += 1
            else:
                if counts:
                    joined_counted += 1
                state += 1
                if state > max_state:
                    max_state = state
                    if state > STATE_CAP:
                        raise DivergenceDetected(
                            f"state exceeded cap {STATE_CAP}; run looks divergent"
                        )
                in_system.append((t, inspects, counts))
                if state == 1:
                    next_departure = t + exp_draw(mu)
            next_arrival = t + exp_draw(lam)
        else:
            # departure
            arrived_at, inspected, counts = in_system.popleft()
            if counts:
                benefit = R - cw * (t - arrived_at)
                if inspected:
                    u_i_samples.append(benefit - ci)
                    inspect_joined_sum += benefit
                    inspect_joined_n += 1
                else:
                    u_ni_samples.append(benefit)
            state -= 1
            next_departure = t + exp_draw(mu) if state > 0 else math.inf

    n_states = max(max(occupancy, default=0), max(arrival_counts, default=0)) + 1
    emp = np.zeros(n_states)
    for s, w in occupancy.items():
        emp[s] = w
    emp /= emp.sum()
    arr = np.zeros(n_states)
    for s, c in arrival_counts.items():
        arr[s] = c
    if arr.sum() > 0:
        arr /= arr.sum()

    ui_hat, ui_se = _mean_se(u_i_samples)
    uni_hat, uni_se = _mean_se(u_ni_samples)
    inspectors = inspect_joined_n + inspect_balked_n
    return SimStats(
        empirical_pi=emp,
        arrival_pi=arr,
        u_inspect_hat=ui_hat,
        u_inspect_se=ui_se,
        u_no_inspect_hat=uni_hat,
        u_no_inspect_se=uni_se,
        n_inspect_samples=len(u_i_samples),
        n_no_inspect_samples=len(u_ni_samples),
        inspect_joined_mean=(
            inspect_joined_sum / inspect_joined_n if inspect_joined_n else None
        ),
        inspect_join_fraction=(
            inspect_joined_n / inspectors if inspectors else None
        ),
        joined_fraction=joined_counted / arrivals_counted if arrivals_counted else 0.0,
        max_state_seen=max_state,
    )


@dataclass(frozen=True)
class ValidationReport:
    tv_distance: float
    tv_tol: float
    u_inspect_margin_se: float | None  # |sim - analytic| in SE units
    u_no_inspect_margin_se: float | None
    passed: bool
    stats: SimStats = field(repr=False)


def validate_against_analytic(config: SimConfig, tol_tv: float = 0.02) -> ValidationReport:
    """Compare one run against the closed forms: TV distance and 3-SE utility checks."""
    d = derive(config.params)
    if (1.0 - config.p) * d.rho >= 1.0:
        raise UnstableRegime("no stationary distribution to validate against")

    stats = simulate(config)
    dist = stationary_distribution(config.params, config.p, tail_eps=1e-13)
    n = len(stats.empirical_pi)
    analytic = np.array([dist.pmf(i) for i in range(n)])
    analytic_tail = max(0.0, 1.0 - analytic.sum())
    tv = 0.5 * (np.abs(stats.empirical_pi - analytic).sum() + analytic_tail)

    ui = utility_inspect(config.params, config.p)
    uni = utility_no_inspect(config.params, config.p)
    ok = tv < tol_tv

    def margin(hat, se, target):
        if hat is None or se is None or se == 0.0:
            return None
        return abs(hat - target) / se

    mi = margin(stats.u_inspect_hat, stats.u_inspect_se, ui)
    mni = margin(stats.u_no_inspect_hat, stats.u_no_inspect_se, uni)
    if mi is not None:
        ok = ok and mi < 3.0
    if mni is not None:
        ok = ok and mni < 3.0
    return ValidationReport(
        tv_distance=float(tv),
        tv_tol=tol_tv,
        u_inspect_margin_se=mi,
        u_no_inspect_margin_se=mni,
        passed=ok,
        stats=stats,
    )

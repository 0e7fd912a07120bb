"""Discrete-event simulator: determinism, textbook reductions, and
agreement with the closed forms."""

import numpy as np
import pytest

from inspectq import (
    SimConfig,
    SystemParams,
    UnstableRegime,
    simulate,
    validate_against_analytic,
)

P059 = SystemParams(lam=0.9, mu=1.0, reward=5.0, wait_cost=1.0, inspect_cost=0.3)
EVENTS = 200_000  # enough for 3-SE agreement at desk scale


def test_determinism_bit_identical():
    cfg = SimConfig(params=P059, p=0.5, horizon_events=50_000, seed=123)
    a, b = simulate(cfg), simulate(cfg)
    assert np.array_equal(a.empirical_pi, b.empirical_pi)
    assert a.u_inspect_hat == b.u_inspect_hat
    assert a.u_no_inspect_hat == b.u_no_inspect_hat
    assert a.max_state_seen == b.max_state_seen


def test_different_seeds_differ():
    cfg = SimConfig(params=P059, p=0.5, horizon_events=50_000, seed=123)
    other = SimConfig(params=P059, p=0.5, horizon_events=50_000, seed=124)
    assert simulate(cfg).u_no_inspect_hat != simulate(other).u_no_inspect_hat


def test_full_inspection_truncates_at_threshold():
    cfg = SimConfig(params=P059, p=1.0, horizon_events=EVENTS, seed=7)
    stats = simulate(cfg)
    assert stats.max_state_seen <= 5  # n_e: nobody joins at or above it
    assert len(stats.empirical_pi) <= 6


def test_no_inspection_is_plain_mm1():
    params = SystemParams(lam=0.5, mu=1.0, reward=5.0, wait_cost=1.0)
    cfg = SimConfig(params=params, p=0.0, horizon_events=EVENTS, seed=11)
    stats = simulate(cfg)
    mean_q = sum(i * q for i, q in enumerate(stats.empirical_pi))
    assert mean_q == pytest.approx(1.0, abs=0.1)  # rho/(1-rho) = 1


def test_pasta_arrival_vs_time_frequencies():
    cfg = SimConfig(params=P059, p=0.5, horizon_events=EVENTS, seed=21)
    stats = simulate(cfg)
    n = stats.n_inspect_samples + stats.n_no_inspect_samples
    tv = 0.5 * np.abs(stats.empirical_pi - stats.arrival_pi).sum()
    assert tv < 0.01
    # binomial 3-SE check on the empty-state frequency
    p0 = stats.empirical_pi[0]
    se = np.sqrt(p0 * (1 - p0) / max(n, 1))
    assert abs(stats.arrival_pi[0] - p0) < 3 * se + 1e-3


def test_utility_decomposition():
    cfg = SimConfig(params=P059, p=0.5, horizon_events=EVENTS, seed=33)
    stats = simulate(cfg)
    recombined = (
        stats.inspect_joined_mean * stats.inspect_join_fraction
        - P059.inspect_cost
    )
    assert stats.u_inspect_hat == pytest.approx(recombined, abs=1e-9)


def test_validation_passes_at_scale():
    cfg = SimConfig(params=P059, p=0.5, horizon_events=EVENTS, seed=42)
    report = validate_against_analytic(cfg, tol_tv=0.02)
    assert report.passed
    assert report.tv_distance < 0.02
    assert report.u_inspect_margin_se < 3.0
    assert report.u_no_inspect_margin_se < 3.0


def test_validation_rejects_unstable_regime():
    params = SystemParams(lam=2.0, mu=1.0, reward=5.0, wait_cost=1.0)
    with pytest.raises(UnstableRegime):
        validate_against_analytic(SimConfig(params=params, p=0.0, horizon_events=1000))


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(params=P059, p=1.5, horizon_events=100)
    with pytest.raises(ValueError):
        SimConfig(params=P059, p=0.5, horizon_events=100, warmup_events=100)


def test_near_full_inspection_close_to_full():
    a = simulate(SimConfig(params=P059, p=0.999, horizon_events=EVENTS, seed=5))
    b = simulate(SimConfig(params=P059, p=1.0, horizon_events=EVENTS, seed=5))
    n = max(len(a.empirical_pi), len(b.empirical_pi))
    pa = np.pad(a.empirical_pi, (0, n - len(a.empirical_pi)))
    pb = np.pad(b.empirical_pi, (0, n - len(b.empirical_pi)))
    assert 0.5 * np.abs(pa - pb).sum() < 0.01

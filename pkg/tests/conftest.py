import math

import numpy as np
import pytest

from inspectq import SystemParams


def random_params(
    rng: np.random.Generator,
    rho_range=(0.05, 0.98),
    ne_range=(1, 60),
    with_inspect_cost=True,
    resolvable=False,
) -> SystemParams:
    """Draw a valid parameter set with a prescribed utilization and threshold.

    With resolvable=True the threshold is capped so that rho**n_e stays
    well above machine epsilon; otherwise the p-dependence of the
    utilities is numerically flat and strict-monotonicity checks are
    meaningless at double precision.
    """
    rho = rng.uniform(*rho_range)
    mu = rng.uniform(0.5, 4.0)
    lam = rho * mu
    ne_hi = ne_range[1]
    if resolvable:
        ne_hi = min(ne_hi, max(ne_range[0], int(-6.0 / math.log10(rho))))
    n_e = int(rng.integers(ne_range[0], ne_hi + 1))
    wait_cost = rng.uniform(0.2, 3.0)
    # reward placing floor(R*mu/wait_cost) exactly at n_e
    reward = (n_e + rng.uniform(0.02, 0.98)) * wait_cost / mu
    inspect_cost = rng.uniform(1e-4, 1.0) * reward if with_inspect_cost else 0.0
    return SystemParams(
        lam=lam, mu=mu, reward=reward, wait_cost=wait_cost, inspect_cost=inspect_cost
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

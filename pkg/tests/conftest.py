"""Shared random-parameter factories for the property tests."""
import math

import pytest

from entroflux import FeedbackParams, check_stability
from entroflux.model import build_drift


def make_params(rng, g_max=0.3, n_max=10.0):
    """One parameter set drawn from broad but sane ranges."""
    return FeedbackParams(
        omega_a=float(rng.uniform(0.0, 3.0)),
        kappa_a=float(10.0 ** rng.uniform(-1.3, 0.3)),
        kappa_c=float(10.0 ** rng.uniform(-1.3, 0.3)),
        g=float(rng.uniform(0.0, g_max)),
        omega_c=1.0,
        tau=float(rng.uniform(0.0, 0.9)),
        theta=float(rng.uniform(0.0, 2.0 * math.pi)),
        n_a=float(rng.uniform(0.0, n_max)),
        n_c=float(rng.uniform(0.0, n_max)),
    )


def make_stable_params(rng, g_max=0.3, n_max=10.0):
    """Resample until the drift is Hurwitz."""
    while True:
        p = make_params(rng, g_max=g_max, n_max=n_max)
        if check_stability(build_drift(p)):
            return p


@pytest.fixture
def param_factory():
    return make_params


@pytest.fixture
def stable_param_factory():
    return make_stable_params

import math

import numpy as np
import pytest

from conftest import make_params, make_stable_params
from entroflux.errors import Unstable
from entroflux.linalg import is_symmetric_psd
from entroflux.model import (CovMatrix, FeedbackParams, build_diffusion,
                             build_drift, check_stability, derive_params,
                             steady_state, thermal_occupation)


def test_derive_params_strong_loop():
    p = FeedbackParams(omega_a=1.0, kappa_a=0.2, kappa_c=0.2, g=0.05, tau=0.9,
                       theta=math.pi)
    der = derive_params(p)
    # theta = pi: reflection adds to damping, no frequency shift
    assert math.isclose(der.kappa_fb, 0.2 * 2.8, rel_tol=1e-15)
    assert der.omega_fb == 1.0
    # independent expression: kappa (1 - tau)(1 + tau)^3
    assert math.isclose(der.k_a, 0.2 * (1 - 0.9) * (1 + 0.9) ** 3, rel_tol=1e-12)
    assert der.coupling == 0.1


def test_derive_params_off_phase():
    p = FeedbackParams(omega_a=1.5, kappa_a=0.4, kappa_c=0.2, g=0.0, tau=0.5,
                       theta=math.pi / 2)
    der = derive_params(p)
    assert math.isclose(der.kappa_fb, 0.4, rel_tol=1e-15)  # cos = 0
    assert math.isclose(der.omega_fb, 1.5 - 2.0 * 0.4 * 0.5, rel_tol=1e-15)
    assert math.isclose(der.k_a, 0.4 * 0.75 * 1.25, rel_tol=1e-12)


def test_no_loop_reduces_to_bare():
    p = FeedbackParams(omega_a=2.0, kappa_a=0.3, kappa_c=0.1, g=0.02, tau=0.0)
    der = derive_params(p)
    assert (der.kappa_fb, der.omega_fb, der.k_a) == (0.3, 2.0, 0.3)
    assert p.xi == 1.0


def test_theta_normalisation():
    p = FeedbackParams(omega_a=1.0, kappa_a=0.2, kappa_c=0.2, g=0.0, tau=0.1,
                       theta=2.0 * math.pi + 0.3)
    assert math.isclose(p.theta, 0.3, abs_tol=1e-12)
    q = FeedbackParams(omega_a=1.0, kappa_a=0.2, kappa_c=0.2, g=0.0, tau=0.1,
                       theta=-math.pi / 2)
    assert math.isclose(q.theta, 1.5 * math.pi, rel_tol=1e-15)


def test_param_validation():
    good = dict(omega_a=1.0, kappa_a=0.2, kappa_c=0.2, g=0.05)
    FeedbackParams(**good)
    for bad in (dict(kappa_a=0.0), dict(kappa_c=-0.1), dict(tau=1.0),
                dict(tau=-0.1), dict(n_a=-1.0), dict(n_c=-0.5),
                dict(omega_a=math.nan), dict(g=math.inf)):
        with pytest.raises(ValueError):
            FeedbackParams(**{**good, **bad})


def test_drift_structure():
    p = FeedbackParams(omega_a=1.0, kappa_a=0.2, kappa_c=0.3, g=0.05, tau=0.9,
                       theta=math.pi)
    a = build_drift(p)
    der = derive_params(p)
    expect = np.array([
        [-der.kappa_fb, der.omega_fb, 0.0, 0.0],
        [-der.omega_fb, -der.kappa_fb, 0.1, 0.0],
        [0.0, 0.0, -0.3, 1.0],
        [0.1, 0.0, -1.0, -0.3],
    ])
    assert np.array_equal(a, expect)


def test_diffusion_structure():
    p = FeedbackParams(omega_a=1.0, kappa_a=0.2, kappa_c=0.3, g=0.05, tau=0.9,
                       theta=math.pi, n_a=2.0, n_c=10.0)
    d = build_diffusion(p)
    der = derive_params(p)
    assert np.array_equal(d, np.diag([der.k_a * 5.0, der.k_a * 5.0,
                                      0.3 * 21.0, 0.3 * 21.0]))


def test_check_stability_matches_eigenvalues():
    rng = np.random.default_rng(811)
    checked = 0
    while checked < 1000:
        p = make_params(rng, g_max=0.8, n_max=0.0)
        a = build_drift(p)
        margin = np.max(np.linalg.eigvals(a).real)
        if abs(margin) < 1e-8:
            continue
        assert check_stability(a) == (margin < 0.0)
        checked += 1


def test_amplifying_loop_is_unstable():
    # 2 tau cos(theta) > 1: reflection feeds energy back in phase
    p = FeedbackParams(omega_a=1.0, kappa_a=0.2, kappa_c=0.2, g=0.0, tau=0.9,
                       theta=0.0)
    assert not check_stability(build_drift(p))
    with pytest.raises(Unstable):
        steady_state(p)


def test_equilibrium_variances_without_coupling():
    # g = 0: each mode thermalises with its own reservoir; mode a sits at
    # k_a (2 n_a + 1) / (2 kappa_fb), which the loop can push below vacuum
    rng = np.random.default_rng(822)
    for _ in range(200):
        p = make_params(rng, g_max=0.0, n_max=5.0)
        der = derive_params(p)
        if der.kappa_fb <= 0.01:
            continue
        v = steady_state(p).v
        va = der.k_a * (2.0 * p.n_a + 1.0) / (2.0 * der.kappa_fb)
        vc = 0.5 * (2.0 * p.n_c + 1.0)
        assert np.max(np.abs(v - np.diag([va, va, vc, vc]))) <= 1e-12 * max(1.0, va, vc)


def test_equilibrium_sub_vacuum_value():
    # the tau = 0.9, theta = pi loop squeezes the effective feed to
    # k_a / (2 kappa_fb) = (1 - tau^2)(1 + tau)^2 / (2 (1 + 2 tau)) < 1/2,
    # independent of the bare kappa_a
    for kappa_a in (0.05, 0.2, 1.3):
        p = FeedbackParams(omega_a=1.0, kappa_a=kappa_a, kappa_c=0.2, g=0.0,
                           tau=0.9, theta=math.pi)
        v = steady_state(p).v
        assert math.isclose(v[0, 0], 0.12248214285714284, rel_tol=1e-12)


def test_steady_state_is_psd():
    rng = np.random.default_rng(833)
    for _ in range(200):
        p = make_stable_params(rng)
        v = steady_state(p).v
        assert is_symmetric_psd(v, tol=1e-12 * max(1.0, float(np.max(np.abs(v)))))


def test_cov_matrix_blocks_and_immutability():
    v = np.diag([1.0, 2.0, 3.0, 4.0])
    v[0, 2] = v[2, 0] = 0.5
    cov = CovMatrix(v)
    assert np.array_equal(cov.block_a, [[1.0, 0.0], [0.0, 2.0]])
    assert np.array_equal(cov.block_c, [[3.0, 0.0], [0.0, 4.0]])
    assert cov.block_ac[0, 0] == 0.5
    with pytest.raises(ValueError):
        cov.v[0, 0] = 9.0


def test_cov_matrix_validation():
    with pytest.raises(ValueError):
        CovMatrix(np.eye(3))
    bad = np.eye(4)
    bad[0, 1] = 0.5
    with pytest.raises(ValueError):
        CovMatrix(bad)
    nan = np.eye(4)
    nan[2, 2] = math.nan
    with pytest.raises(ValueError):
        CovMatrix(nan)


def test_thermal_occupation_values():
    # independent series oracle: 1/x - 1/2 + x/12 - x^3/720 for small x
    x = 0.01
    series = 1.0 / x - 0.5 + x / 12.0 - x ** 3 / 720.0
    got = thermal_occupation(0.01, 1.0)
    assert math.isclose(got, series, rel_tol=1e-12)
    assert math.isclose(got, 99.50083333194443, rel_tol=1e-15)
    assert thermal_occupation(1.0, 1.0) == 1.0 / math.expm1(1.0)
    assert thermal_occupation(1.0, 0.0) == 0.0
    assert thermal_occupation(1000.0, 1.0) == 0.0  # overflow guard region


def test_thermal_occupation_validation():
    with pytest.raises(ValueError):
        thermal_occupation(0.0, 1.0)
    with pytest.raises(ValueError):
        thermal_occupation(-1.0, 1.0)
    with pytest.raises(ValueError):
        thermal_occupation(1.0, -0.1)
    with pytest.raises(ValueError):
        thermal_occupation(math.inf, 1.0)

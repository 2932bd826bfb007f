import cmath
import math

import numpy as np
import pytest

from entroflux.errors import NoPhysicalRoot, UnstableBranch
from entroflux.model import derive_params
from entroflux.optomech import (OptoParams, _real_cubic_roots,
                                generic_from_detuning, map_to_generic,
                                mean_field_steady_state, select_branch)


def test_cubic_known_roots():
    assert _real_cubic_roots(1.0, -6.0, 11.0, -6.0) == pytest.approx([1.0, 2.0, 3.0])
    # double root (x - 1)^2 (x - 4), listed once
    assert _real_cubic_roots(1.0, -6.0, 9.0, -4.0) == pytest.approx([1.0, 4.0])
    # triple root (x - 2)^3
    assert _real_cubic_roots(1.0, -6.0, 12.0, -8.0) == pytest.approx([2.0])
    # single real root
    roots = _real_cubic_roots(1.0, 0.0, 1.0, -2.0)
    assert len(roots) == 1
    assert roots[0] ** 3 + roots[0] - 2.0 == pytest.approx(0.0, abs=1e-12)


def test_cubic_matches_numpy_roots():
    rng = np.random.default_rng(1201)
    checked = 0
    while checked < 1000:
        a = float(rng.uniform(0.5, 2.0)) * (1 if rng.random() < 0.5 else -1)
        b, c, d = (float(3.0 * rng.standard_normal()) for _ in range(3))
        ref = np.roots([a, b, c, d])
        real_ref = sorted(r.real for r in ref if abs(r.imag) <= 1e-9 * max(1.0, abs(r)))
        # skip near-degenerate root patterns where classification flaps
        if len(real_ref) == 3 and (min(abs(real_ref[0] - real_ref[1]),
                                       abs(real_ref[1] - real_ref[2])) < 1e-5):
            continue
        got = _real_cubic_roots(a, b, c, d)
        assert len(got) == len(real_ref)
        scale = max(1.0, max(abs(r) for r in real_ref))
        assert got == pytest.approx(real_ref, abs=1e-7 * scale)
        checked += 1


def _base(**kw):
    defaults = dict(kappa_a=0.2, gamma_m=0.1, delta_0=1.0, g0=0.05,
                    e_amp=1.0, omega_m=1.0, tau=0.0, theta=math.pi)
    defaults.update(kw)
    return OptoParams(**defaults)


def test_linear_regime_photon_number():
    p = _base(g0=0.0, e_amp=2.0, tau=0.5, theta=0.7)
    st, = mean_field_steady_state(p)
    kappa_fb = p.kappa_a * (1.0 - 2.0 * p.tau * math.cos(p.theta))
    delta_fb = p.delta_0 - 2.0 * p.kappa_a * p.tau * math.sin(p.theta)
    expect = (p.xi * 2.0) ** 2 / (kappa_fb ** 2 + delta_fb ** 2)
    assert st.n_photon == pytest.approx(expect, rel=1e-12)
    assert st.stable
    assert st.delta_eff == pytest.approx(delta_fb, rel=1e-12)


def test_mean_field_self_consistency():
    rng = np.random.default_rng(1202)
    for _ in range(200):
        p = _base(kappa_a=float(rng.uniform(0.05, 1.0)),
                  gamma_m=float(rng.uniform(0.01, 0.5)),
                  delta_0=float(rng.uniform(-2.0, 2.0)),
                  g0=float(rng.uniform(0.0, 0.3)),
                  e_amp=float(rng.uniform(0.0, 3.0)),
                  tau=float(rng.uniform(0.0, 0.9)),
                  theta=float(rng.uniform(0.0, 2.0 * math.pi)))
        kappa_fb = p.kappa_a * (1.0 - 2.0 * p.tau * math.cos(p.theta))
        if kappa_fb <= 0.01:
            continue
        for st in mean_field_steady_state(p):
            # the amplitude must reproduce the photon-number root
            assert abs(st.a_s) ** 2 == pytest.approx(st.n_photon,
                                                     rel=1e-8, abs=1e-10)
            expect_c = 1j * p.g0 * st.n_photon / complex(p.gamma_m, p.omega_m)
            assert cmath.isclose(st.c_s, expect_c, rel_tol=1e-12, abs_tol=1e-15)


def test_bistability_branch_pattern():
    # chi = 1, Delta_fb = 2, kappa_fb = 0.1: hysteresis region for
    # E^2 between the local extrema of the cubic
    p = _base(kappa_a=0.1, gamma_m=0.1, delta_0=2.0,
              g0=math.sqrt(0.5 * 1.01), e_amp=0.5, tau=0.0)
    states = mean_field_steady_state(p)
    assert len(states) == 3
    assert [st.stable for st in states] == [True, False, True]
    assert [st.branch for st in states] == [0, 1, 2]
    assert states[0].n_photon < states[1].n_photon < states[2].n_photon
    # default pick: the lowest stable branch
    assert select_branch(states) is states[0]
    assert select_branch(states, index=2) is states[2]
    with pytest.raises(ValueError):
        select_branch(states, index=3)
    with pytest.raises(UnstableBranch):
        map_to_generic(p, states[1])


def test_map_to_generic_round_trip():
    p = _base(delta_0=1.3, tau=0.9, theta=0.7, g0=0.02, e_amp=1.5,
              gamma_m=0.05, n_a=0.5, n_c=7.0)
    st = select_branch(mean_field_steady_state(p))
    gp = map_to_generic(p, st)
    # the loop shift applied downstream must land on the branch detuning
    assert derive_params(gp).omega_fb == pytest.approx(st.delta_eff, rel=1e-12)
    assert gp.kappa_c == p.gamma_m
    assert gp.omega_c == p.omega_m
    assert gp.g == pytest.approx(p.g0 * abs(st.a_s), rel=1e-12)
    assert (gp.tau, gp.theta, gp.n_a, gp.n_c) == (p.tau, p.theta, p.n_a, p.n_c)


def test_drive_attenuation_flag():
    p = _base(g0=0.0, e_amp=2.0, tau=0.8)
    attenuated, = mean_field_steady_state(p)
    bare, = mean_field_steady_state(p, attenuated_drive=False)
    assert attenuated.n_photon == pytest.approx(bare.n_photon * (1.0 - 0.8 ** 2),
                                                rel=1e-12)


def test_generic_from_detuning_mapping():
    gp = generic_from_detuning(-1.0, 0.05, kappa_a=0.5, gamma_m=1e-2,
                               tau=0.9, n_c=10.0)
    assert gp.omega_a == -1.0
    assert gp.kappa_a == 0.5
    assert gp.kappa_c == 1e-2
    assert gp.g == 0.05
    assert gp.omega_c == 1.0
    assert gp.n_c == 10.0
    # theta = pi default: effective detuning equals the bare one
    assert derive_params(gp).omega_fb == -1.0


def test_drive_property():
    assert _base(e_amp=1.5).drive == 1.5
    p = OptoParams(kappa_a=0.5, gamma_m=0.1, delta_0=0.0, g0=0.0,
                   power=2.0, laser_freq=4.0)
    assert p.drive == pytest.approx(math.sqrt(0.5), rel=1e-15)
    assert OptoParams(kappa_a=0.5, gamma_m=0.1, delta_0=0.0, g0=0.0).drive == 0.0


def test_param_validation():
    with pytest.raises(ValueError):
        _base(e_amp=1.0, power=1.0, laser_freq=1.0)  # two drive routes
    with pytest.raises(ValueError):
        OptoParams(kappa_a=0.5, gamma_m=0.1, delta_0=0.0, g0=0.0, power=1.0)
    with pytest.raises(ValueError):
        _base(gamma_m=0.0)
    with pytest.raises(ValueError):
        _base(g0=-0.1)
    with pytest.raises(ValueError):
        _base(tau=1.0)
    with pytest.raises(ValueError):
        _base(e_amp=-1.0)


def test_singular_response_is_refused():
    # tau = 0.5 at theta = 0 cancels the loop damping exactly; with zero
    # detuning the linear response has no finite working point
    p = OptoParams(kappa_a=1.0, gamma_m=0.1, delta_0=0.0, g0=0.0, e_amp=1.0,
                   tau=0.5, theta=0.0)
    with pytest.raises(NoPhysicalRoot):
        mean_field_steady_state(p)


def test_no_stable_branch_raises():
    states = [st for st in mean_field_steady_state(
        _base(kappa_a=0.1, gamma_m=0.1, delta_0=2.0,
              g0=math.sqrt(0.5 * 1.01), e_amp=0.5, tau=0.0))]
    middle_only = [states[1]]
    with pytest.raises(UnstableBranch):
        select_branch(middle_only)

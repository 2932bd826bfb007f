"""Optomechanical front-end: a driven cavity in the same feedback loop,
coupled to a mechanical mode by radiation pressure.

The classical working point solves a cubic in the intracavity photon number
(the usual bistability curve, with loop-renormalised decay and detuning).
Linearising the fluctuations around a stable branch lands back on the
generic two-oscillator model: the effective detuning plays the mode-a
frequency, the mechanical frequency and damping play omega_c and kappa_c,
and the light-enhanced coupling g0 |a_s| plays g.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NoPhysicalRoot, UnstableBranch
from .model import TWO_PI, FeedbackParams

CUBIC_TOL = 1e-12   # discriminant scale below which roots count as repeated


@dataclass(frozen=True)
class OptoParams:
    """Bare optomechanical parameters, rates in units of omega_m by default.

    The drive can be given directly (e_amp) or as a laser power/frequency
    pair; at most one of the two routes may be set.
    """

    kappa_a: float
    gamma_m: float
    delta_0: float
    g0: float
    e_amp: float | None = None
    power: float | None = None
    laser_freq: float | None = None
    omega_m: float = 1.0
    tau: float = 0.0
    theta: float = math.pi
    n_a: float = 0.0
    n_c: float = 0.0

    def __post_init__(self):
        values = (self.kappa_a, self.gamma_m, self.delta_0, self.g0,
                  self.omega_m, self.tau, self.theta, self.n_a, self.n_c)
        if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in values):
            raise ValueError("all parameters must be finite numbers")
        if self.kappa_a <= 0.0 or self.gamma_m <= 0.0 or self.omega_m <= 0.0:
            raise ValueError("kappa_a, gamma_m, omega_m must be positive")
        if self.g0 < 0.0:
            raise ValueError("g0 must be nonnegative")
        if not 0.0 <= self.tau < 1.0:
            raise ValueError(f"reflectivity tau must lie in [0, 1), got {self.tau}")
        if self.n_a < 0.0 or self.n_c < 0.0:
            raise ValueError("thermal occupations must be nonnegative")
        if self.e_amp is not None and self.power is not None:
            raise ValueError("give either e_amp or power, not both")
        if self.e_amp is not None and not (math.isfinite(self.e_amp) and self.e_amp >= 0.0):
            raise ValueError("e_amp must be nonnegative and finite")
        if self.power is not None:
            if not (math.isfinite(self.power) and self.power >= 0.0):
                raise ValueError("power must be nonnegative and finite")
            if self.laser_freq is None or not (math.isfinite(self.laser_freq)
                                               and self.laser_freq > 0.0):
                raise ValueError("power requires a positive laser_freq")
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    @property
    def xi(self):
        """Transmission amplitude of the feedback beam splitter."""
        return math.sqrt(1.0 - self.tau * self.tau)

    @property
    def drive(self):
        """Drive amplitude E: direct, or sqrt(2 P kappa_a / omega_L)."""
        if self.e_amp is not None:
            return self.e_amp
        if self.power is not None:
            return math.sqrt(2.0 * self.power * self.kappa_a / self.laser_freq)
        return 0.0


@dataclass(frozen=True)
class OptoSteadyState:
    """One classical working point of the driven cavity."""

    a_s: complex        # intracavity field amplitude
    c_s: complex        # mechanical amplitude
    n_photon: float     # |a_s|^2, a root of the bistability cubic
    delta_eff: float    # detuning after loop shift and static spring shift
    branch: int         # index in ascending-n order
    stable: bool        # positive-slope (dynamically admissible) branch


def _cbrt(x):
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _real_cubic_roots(a, b, c, d, tol=CUBIC_TOL):
    """Real roots of a x^3 + b x^2 + c x + d (a != 0), ascending, with
    repeated roots listed once.

    Depressed form t^3 + p t + q; the trigonometric formula covers three
    real roots, Cardano (cancellation-safe variant) the single-root case,
    and a near-zero discriminant is resolved into the exact repeated-root
    pattern.
    """
    p = (3.0 * a * c - b * b) / (3.0 * a * a)
    q = (2.0 * b ** 3 - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a ** 3)
    shift = -b / (3.0 * a)
    disc = -4.0 * p ** 3 - 27.0 * q * q
    scale = max(1.0, abs(p) ** 3, q * q)
    if disc > tol * scale:
        # three distinct real roots; p < 0 is guaranteed here
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        phi = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        ts = [m * math.cos(phi - TWO_PI * k / 3.0) for k in range(3)]
    elif disc < -tol * scale:
        # one real root; pick the large cube root to dodge cancellation
        sq = math.sqrt(q * q / 4.0 + p ** 3 / 27.0)
        u = _cbrt(-q / 2.0 - math.copysign(sq, q))
        ts = [u - p / (3.0 * u)] if u != 0.0 else [0.0]
    elif abs(p) ** 3 <= tol * scale:
        # triple root (p ~ q ~ 0)
        ts = [_cbrt(-q)]
    else:
        # double root pattern: simple root 3q/p, double root -3q/(2p)
        ts = [3.0 * q / p, -1.5 * q / p]
    return sorted(t + shift for t in ts)


def mean_field_steady_state(p, attenuated_drive=True):
    """All admissible classical branches, ascending in photon number.

    The photon number solves

        chi^2 n^3 - 2 chi Delta_fb n^2 + (kappa_fb^2 + Delta_fb^2) n = E^2,

    with chi = 2 g0^2 omega_m / (omega_m^2 + gamma_m^2) the static spring
    coefficient and Delta_fb, kappa_fb the loop-shifted detuning and decay.
    attenuated_drive=True scales the drive by the beam-splitter transmission
    xi (the drive reaches the cavity through the loop); False keeps the bare
    amplitude.  A branch is marked stable when the cubic's slope there is
    positive (negative-slope branches are the classic bistability backbends).
    """
    cos_t = math.cos(p.theta)
    sin_t = math.sin(p.theta)
    kappa_fb = p.kappa_a * (1.0 - 2.0 * p.tau * cos_t)
    delta_fb = p.delta_0 - 2.0 * p.kappa_a * p.tau * sin_t
    e_eff = (p.xi if attenuated_drive else 1.0) * p.drive
    chi = 2.0 * p.g0 * p.g0 * p.omega_m / (p.omega_m ** 2 + p.gamma_m ** 2)

    if chi == 0.0:
        denom = kappa_fb ** 2 + delta_fb ** 2
        if denom <= 0.0:
            raise NoPhysicalRoot("cavity response is singular (kappa_fb = delta_fb = 0)")
        ns = [e_eff * e_eff / denom]
    else:
        roots = _real_cubic_roots(chi * chi, -2.0 * chi * delta_fb,
                                  kappa_fb ** 2 + delta_fb ** 2, -e_eff * e_eff)
        floor = -CUBIC_TOL * max(1.0, max(abs(r) for r in roots))
        ns = [max(r, 0.0) for r in roots if r >= floor]
        if not ns:
            raise NoPhysicalRoot("photon-number cubic has no nonnegative root")

    states = []
    for idx, n in enumerate(ns):
        delta_eff = delta_fb - chi * n
        resp = complex(kappa_fb, delta_eff)
        if resp == 0:
            raise NoPhysicalRoot("cavity response is singular on this branch")
        a_s = e_eff / resp
        c_s = 1j * p.g0 * n / complex(p.gamma_m, p.omega_m)
        slope = kappa_fb ** 2 + delta_eff ** 2 - 2.0 * chi * n * delta_eff
        states.append(OptoSteadyState(a_s=a_s, c_s=c_s, n_photon=n,
                                      delta_eff=delta_eff, branch=idx,
                                      stable=slope > 0.0))
    return states


def select_branch(states, index=None):
    """Pick a working point: the lowest stable branch by default (the one an
    adiabatic turn-on reaches), or an explicit index."""
    if index is not None:
        if not 0 <= index < len(states):
            raise ValueError(f"branch index {index} out of range 0..{len(states) - 1}")
        return states[index]
    for st in states:
        if st.stable:
            return st
    raise UnstableBranch("no dynamically stable mean-field branch")


def map_to_generic(p, state):
    """FeedbackParams for the fluctuations linearised around one branch.

    omega_a is set so the loop frequency shift applied downstream lands the
    a-mode exactly on the branch's effective detuning; the mechanical mode
    becomes mode c verbatim; the coupling is light-enhanced, g0 |a_s|.
    """
    if not state.stable:
        raise UnstableBranch(f"branch {state.branch} sits on the unstable slope")
    return FeedbackParams(
        omega_a=state.delta_eff + 2.0 * p.kappa_a * p.tau * math.sin(p.theta),
        kappa_a=p.kappa_a,
        kappa_c=p.gamma_m,
        g=p.g0 * abs(state.a_s),
        omega_c=p.omega_m,
        tau=p.tau,
        theta=p.theta,
        n_a=p.n_a,
        n_c=p.n_c,
    )


def generic_from_detuning(delta_0, g, *, kappa_a, gamma_m, omega_m=1.0,
                          tau=0.0, theta=math.pi, n_a=0.0, n_c=0.0):
    """Direct detuning route for sweeps that prescribe the light-enhanced
    coupling instead of a drive amplitude.

    The bare detuning takes the mode-a frequency slot; the loop shift is
    then applied downstream like for any other frequency, so the effective
    detuning comes out loop-shifted exactly as on the cubic route (minus the
    static spring term, which needs a drive to exist).
    """
    return FeedbackParams(omega_a=delta_0, kappa_a=kappa_a, kappa_c=gamma_m,
                          g=g, omega_c=omega_m, tau=tau, theta=theta,
                          n_a=n_a, n_c=n_c)

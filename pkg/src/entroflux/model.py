"""Two damped oscillators with a coherent feedback loop on the first.

Mode a decays into an interferometric loop: a beam splitter of reflectivity
tau and phase theta sends part of the output field back into the input.  The
loop renormalises the decay rate, the oscillation frequency and the noise
feed of mode a; mode c sees an ordinary thermal reservoir.  The two modes
couple through a beam-splitter-plus-squeezing Hamiltonian of strength g.

Quadratures are ordered (X_a, Y_a, X_c, Y_c) throughout, with vacuum
variance 1/2 per quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Unstable
from .linalg import characteristic_quartic, routh_hurwitz_stable, solve_lyapunov

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FeedbackParams:
    """Bare model parameters.

    Rates and frequencies share whatever unit omega_c sets (omega_c = 1 makes
    everything dimensionless in units of the second oscillator's frequency).
    theta is stored normalised into [0, 2 pi).
    """

    omega_a: float
    kappa_a: float
    kappa_c: float
    g: float
    omega_c: float = 1.0
    tau: float = 0.0
    theta: float = math.pi
    n_a: float = 0.0
    n_c: float = 0.0

    def __post_init__(self):
        values = (self.omega_a, self.kappa_a, self.kappa_c, self.g,
                  self.omega_c, self.tau, self.theta, self.n_a, self.n_c)
        if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in values):
            raise ValueError("all parameters must be finite numbers")
        if self.kappa_a <= 0.0 or self.kappa_c <= 0.0:
            raise ValueError("decay rates kappa_a, kappa_c must be positive")
        if not 0.0 <= self.tau < 1.0:
            raise ValueError(f"reflectivity tau must lie in [0, 1), got {self.tau}")
        if self.n_a < 0.0 or self.n_c < 0.0:
            raise ValueError("thermal occupations must be nonnegative")
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    @property
    def xi(self):
        """Transmission amplitude of the feedback beam splitter."""
        return math.sqrt(1.0 - self.tau * self.tau)


@dataclass(frozen=True)
class DerivedParams:
    """Loop-renormalised coefficients entering drift and diffusion."""

    kappa_fb: float   # effective decay rate of mode a
    omega_fb: float   # effective frequency of mode a
    k_a: float        # noise-feed strength of the engineered reservoir
    coupling: float   # quadrature coupling, 2 g


def derive_params(p):
    """Effective parameters of the loop-dressed a mode.

    One round trip through a beam splitter (reflectivity tau, phase theta)
    interferes the output with the input: the decay picks up a factor
    (1 - 2 tau cos theta), the frequency shifts by -2 kappa_a tau sin theta,
    and the vacuum/thermal feed rescales to
    kappa_a (1 - tau^2)(1 - 2 tau cos theta + tau^2).
    """
    c = math.cos(p.theta)
    s = math.sin(p.theta)
    kappa_fb = p.kappa_a * (1.0 - 2.0 * p.tau * c)
    omega_fb = p.omega_a - 2.0 * p.kappa_a * p.tau * s
    k_a = p.kappa_a * (1.0 - p.tau * p.tau) * (1.0 - 2.0 * p.tau * c + p.tau * p.tau)
    return DerivedParams(kappa_fb=kappa_fb, omega_fb=omega_fb, k_a=k_a,
                         coupling=2.0 * p.g)


def build_drift(p, der=None):
    """Drift matrix A of d<r>/dt = A <r> in (X_a, Y_a, X_c, Y_c) order.

    The coupling enters only through Y_a <- X_c and Y_c <- X_a: the X-X
    channel cancels between the exchange and two-mode-squeezing halves of
    the interaction.
    """
    if der is None:
        der = derive_params(p)
    return np.array([
        [-der.kappa_fb, der.omega_fb, 0.0, 0.0],
        [-der.omega_fb, -der.kappa_fb, der.coupling, 0.0],
        [0.0, 0.0, -p.kappa_c, p.omega_c],
        [der.coupling, 0.0, -p.omega_c, -p.kappa_c],
    ])


def build_diffusion(p, der=None):
    """Diffusion matrix D: iso-quadrature noise per mode.

    Mode a is fed by the engineered loop reservoir at strength
    k_a (2 n_a + 1); mode c by its thermal bath at kappa_c (2 n_c + 1).
    """
    if der is None:
        der = derive_params(p)
    d_a = der.k_a * (2.0 * p.n_a + 1.0)
    d_c = p.kappa_c * (2.0 * p.n_c + 1.0)
    return np.diag([d_a, d_a, d_c, d_c])


def check_stability(a):
    """True when every eigenvalue of the drift has Re < 0.

    Routh-Hurwitz on the characteristic quartic; no eigensolver.  A loop
    with 2 tau cos theta >= 1 turns the mode-a decay into gain, but the
    coupling to the damped second mode can still stabilise the pair, so a
    nonnegative diagonal entry alone decides nothing.
    """
    a = np.asarray(a, dtype=float)
    return routh_hurwitz_stable(characteristic_quartic(a))


@dataclass(frozen=True)
class CovMatrix:
    """Steady-state covariance in (X_a, Y_a, X_c, Y_c) order.

    The array is validated (4x4, finite, symmetric) and frozen read-only.
    """

    v: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=float)
        if v.shape != (4, 4):
            raise ValueError(f"covariance must be 4x4, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("covariance contains non-finite entries")
        if float(np.max(np.abs(v - v.T))) > 1e-10:
            raise ValueError("covariance must be symmetric")
        v = 0.5 * (v + v.T)
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def block_a(self):
        return self.v[:2, :2]

    @property
    def block_c(self):
        return self.v[2:, 2:]

    @property
    def block_ac(self):
        return self.v[:2, 2:]


def steady_state(p):
    """Stationary covariance of the feedback model.

    Raises Unstable outside the stability region (no steady state exists
    there; sweeps record such points as gaps instead of calling this blindly).
    """
    der = derive_params(p)
    a = build_drift(p, der)
    if not check_stability(a):
        raise Unstable(
            f"drift is not Hurwitz at omega_a={p.omega_a:g}, g={p.g:g}, "
            f"tau={p.tau:g}, theta={p.theta:g}")
    return CovMatrix(solve_lyapunov(a, build_diffusion(p, der)))


def thermal_occupation(omega, temperature):
    """Bose-Einstein occupation 1 / (exp(omega / T) - 1), with hbar = k_B = 1.

    T = 0 maps to exactly 0; ratios beyond the exp overflow range return 0
    since the occupation is zero to double precision anyway.
    """
    if not (math.isfinite(omega) and omega > 0.0):
        raise ValueError("omega must be positive and finite")
    if not (math.isfinite(temperature) and temperature >= 0.0):
        raise ValueError("temperature must be nonnegative and finite")
    if temperature == 0.0:
        return 0.0
    x = omega / temperature
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)

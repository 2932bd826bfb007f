"""Stationary thermodynamics and correlations of a Gaussian steady state.

Entropy production is evaluated two independent ways: a trace formula over
the irreversible part of the drift, and a closed form in the local variances
that splits into per-mode contributions mu_a + mu_c.  Both are kept because
the pair acts as a cross-check; they agree to machine precision on every
stable point.  Entropies are Renyi-2 (Wigner) entropies, so every logarithm
here is natural.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (ComplexSymplecticEigenvalue, DegenerateDiffusion,
                     NonPositiveDeterminant)
from .linalg import det_small, is_symmetric_psd, symplectic_form
from .model import derive_params, steady_state

DIFFUSION_FLOOR = 1e-14   # below this a diffusion channel counts as dead
DISC_SLACK = 1e-12        # roundoff allowance in the symplectic discriminant
PHYSICALITY_TOL = 1e-10   # uncertainty-relation test tolerance

# X quadratures are even under time reversal, Y quadratures odd.
_PARITY = np.diag([1.0, -1.0, 1.0, -1.0])


def _as_cov(v):
    v = getattr(v, "v", v)
    v = np.asarray(v, dtype=float)
    if v.shape != (4, 4):
        raise ValueError(f"expected a 4x4 covariance, got shape {v.shape}")
    return v


def irreversible_drift(a):
    """Time-reversal-odd part of the drift, A_irr = (A + E A E) / 2.

    For the feedback model this is the diagonal damping
    diag(-kappa_fb, -kappa_fb, -kappa_c, -kappa_c).
    """
    a = np.asarray(a, dtype=float)
    return 0.5 * (a + _PARITY @ a @ _PARITY)


def entropy_production_trace(a_irr, d, v):
    """Trace form of the stationary entropy production rate,

        Pi_s = tr(A_irr) + 2 tr(A_irr^T D^-1 A_irr V),

    with D the (diagonal) diffusion.  Raises DegenerateDiffusion when a
    noise channel is dead, since the formula divides by it.
    """
    a_irr = np.asarray(a_irr, dtype=float)
    d_diag = np.diag(np.asarray(d, dtype=float))
    v = _as_cov(v)
    if np.min(d_diag) <= DIFFUSION_FLOOR:
        raise DegenerateDiffusion(f"diffusion diagonal min {np.min(d_diag):g}")
    d_inv = np.diag(1.0 / d_diag)
    return float(np.trace(a_irr) + 2.0 * np.trace(a_irr.T @ d_inv @ a_irr @ v))


def entropy_production_explicit(p, der, v):
    """Closed form (pi_s, mu_a, mu_c).

    Each mode's term measures the imbalance between its stationary variance
    and the variance its own reservoir would impose alone:

        mu_a = 2 kappa_fb [ kappa_fb (V11 + V22) / (k_a (2 n_a + 1)) - 1 ]
        mu_c = 2 kappa_c  [ (V33 + V44) / (2 n_c + 1) - 1 ]

    mu terms are signed heat-exchange rates (positive = the mode dumps
    entropy into its reservoir); their sum is the production rate Pi_s >= 0.
    """
    v = _as_cov(v)
    if der.k_a <= DIFFUSION_FLOOR:
        raise DegenerateDiffusion(f"engineered noise feed k_a = {der.k_a:g}")
    mu_a = 2.0 * der.kappa_fb * (
        der.kappa_fb * (v[0, 0] + v[1, 1]) / (der.k_a * (2.0 * p.n_a + 1.0)) - 1.0)
    mu_c = 2.0 * p.kappa_c * ((v[2, 2] + v[3, 3]) / (2.0 * p.n_c + 1.0) - 1.0)
    return mu_a + mu_c, mu_a, mu_c


def mode_occupations(v):
    """Stationary occupations (n_a_s, n_c_s) from the quadrature variances,
    n = (V_XX + V_YY - 1) / 2."""
    v = _as_cov(v)
    return (0.5 * (v[0, 0] + v[1, 1] - 1.0),
            0.5 * (v[2, 2] + v[3, 3] - 1.0))


def wigner_entropy(m):
    """Renyi-2 (Wigner) entropy (1/2) ln det M of a Gaussian block."""
    m = np.asarray(m, dtype=float)
    det = det_small(m)
    if det <= 0.0:
        raise NonPositiveDeterminant(f"det = {det:g}")
    return 0.5 * math.log(det)


def mutual_information(v):
    """I = S(V_a) + S(V_c) - S(V), nonnegative whenever V is a valid
    classical covariance."""
    v = _as_cov(v)
    return wigner_entropy(v[:2, :2]) + wigner_entropy(v[2:, 2:]) - wigner_entropy(v)


def log_negativity(v):
    """(E_N, nu_minus) of the two-mode Gaussian state.

    nu_minus is the smaller symplectic eigenvalue of the partial transpose,

        nu_-^2 = (Delta~ - sqrt(Delta~^2 - 4 det V)) / 2,
        Delta~ = det V_a + det V_c - 2 det V_ac,

    and E_N = max(0, -ln 2 nu_-).  A discriminant within DISC_SLACK below
    zero is clamped to zero; anything worse raises
    ComplexSymplecticEigenvalue.
    """
    v = _as_cov(v)
    det_a = det_small(v[:2, :2])
    det_c = det_small(v[2:, 2:])
    det_x = det_small(v[:2, 2:])
    det_v = det_small(v)
    delta = det_a + det_c - 2.0 * det_x
    disc = delta * delta - 4.0 * det_v
    if disc < -DISC_SLACK:
        raise ComplexSymplecticEigenvalue(f"discriminant {disc:g} < 0")
    nu_sq = 0.5 * (delta - math.sqrt(max(disc, 0.0)))
    if nu_sq < -DISC_SLACK:
        raise ComplexSymplecticEigenvalue(f"nu_-^2 = {nu_sq:g} < 0")
    nu = math.sqrt(max(nu_sq, 0.0))
    if nu == 0.0:
        return math.inf, 0.0
    return max(0.0, -math.log(2.0 * nu)), nu


def physicality_flag(v):
    """True when V + (i/2) Omega >= 0, i.e. the state satisfies the
    uncertainty relation.

    Tested on the real 8x8 embedding [[V, -Omega/2], [Omega/2, V]], whose
    positive semidefiniteness is equivalent.  Reported, never raised: the
    engineered loop reservoir can hold a mode below vacuum noise, and that
    is data, not an error.
    """
    v = _as_cov(v)
    w = symplectic_form(2)
    emb = np.block([[v, -0.5 * w], [0.5 * w, v]])
    return is_symmetric_psd(emb, tol=PHYSICALITY_TOL)


@dataclass(frozen=True)
class ThermoReport:
    """All stationary diagnostics of one parameter point."""

    pi_s: float           # entropy production rate
    mu_a: float           # mode-a contribution (loop reservoir)
    mu_c: float           # mode-c contribution (thermal bath)
    phi_s: float          # entropy flux; -pi_s at stationarity
    mutual_info: float    # Renyi-2 mutual information
    log_neg: float        # logarithmic negativity E_N
    nu_minus: float       # smaller PT symplectic eigenvalue
    n_a_s: float          # stationary occupation of mode a
    n_c_s: float          # stationary occupation of mode c
    physical: bool        # uncertainty-relation flag


def steady_report(p, cov=None):
    """Full stationary report for one parameter point.

    Solves the steady state unless a covariance is passed in; the explicit
    entropy-production form supplies the reported pi_s (the trace form is
    the cross-check used in tests).
    """
    if cov is None:
        cov = steady_state(p)
    der = derive_params(p)
    v = _as_cov(cov)
    pi_s, mu_a, mu_c = entropy_production_explicit(p, der, v)
    n_a_s, n_c_s = mode_occupations(v)
    e_n, nu = log_negativity(v)
    return ThermoReport(pi_s=pi_s, mu_a=mu_a, mu_c=mu_c, phi_s=-pi_s,
                        mutual_info=mutual_information(v), log_neg=e_n,
                        nu_minus=nu, n_a_s=n_a_s, n_c_s=n_c_s,
                        physical=physicality_flag(v))

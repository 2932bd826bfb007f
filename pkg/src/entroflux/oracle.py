"""Independent steady-state check: integrate dV/dt = A V + V A^T + D.

The integrator is classical fixed-step RK4.  Because the right-hand side is
affine in V, one RK4 step is an affine map on vec(V); n steps compose into a
single affine map that binary squaring builds in O(log n) small matrix
products.  This is algebraically identical to naive stepping (including the
per-step symmetrisation, which is folded into the map) but keeps
slow-relaxation configurations, where n runs into the tens of millions,
affordable.  Tests verify the equivalence against a literal RK4 loop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Diverged, OracleMismatch, Unstable
from .linalg import characteristic_quartic, mat_inf_norm, stability_margin
from .model import build_diffusion, build_drift, derive_params

DIVERGENCE_LIMIT = 1e12   # covariance norm beyond which we call it blown up
DEFAULT_DECAY_SPAN = 50.0  # horizon in units of the slowest decay time
ORACLE_TOL = 1e-6         # steady-state agreement required of stable points


@dataclass(frozen=True)
class OdeConfig:
    """Fixed-step integration schedule.

    v0 defaults to the vacuum covariance I/2; the horizon is rounded up to a
    whole number of steps.
    """

    dt: float
    t_max: float
    v0: np.ndarray | None = None

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError("dt must be positive and finite")
        if not (math.isfinite(self.t_max) and self.t_max >= self.dt):
            raise ValueError("t_max must be finite and at least one step long")

    @property
    def n_steps(self):
        return max(1, int(math.ceil(self.t_max / self.dt - 1e-9)))


def default_config(a):
    """Schedule sized from the drift itself: the step resolves the fastest
    matrix scale (dt = 0.005 / max|A_ij|, well inside RK4's stability disc)
    and the horizon covers DEFAULT_DECAY_SPAN slowest-decay times.

    Raises Unstable when the drift has no decay margin, since no finite
    horizon reaches a steady state then.
    """
    a = np.asarray(a, dtype=float)
    scale = float(np.max(np.abs(a)))
    dt = 0.005 / max(scale, 1.0)
    margin = stability_margin(characteristic_quartic(a))
    if margin <= 0.0:
        raise Unstable("drift has no decay margin; no steady state to integrate to")
    return OdeConfig(dt=dt, t_max=DEFAULT_DECAY_SPAN / margin)


def _affine_step(a, d, dt):
    """One RK4 step as an affine map vec(V) -> P vec(V) + s.

    For dV/dt = K V + D (K the Lyapunov operator in vec space), RK4 gives
    P = I + z + z^2/2 + z^3/6 + z^4/24 with z = dt K, and
    s = dt (I + z/2 + z^2/6 + z^3/24) vec(D).  Symmetrisation after each
    step is itself linear (vec-transpose averaging), so it folds into the
    map exactly.
    """
    n = a.shape[0]
    eye_n = np.eye(n)
    k = np.kron(a, eye_n) + np.kron(eye_n, a)
    z = dt * k
    z2 = z @ z
    z3 = z2 @ z
    z4 = z3 @ z
    nn = n * n
    eye = np.eye(nn)
    p = eye + z + z2 / 2.0 + z3 / 6.0 + z4 / 24.0
    s = dt * ((eye + z / 2.0 + z2 / 6.0 + z3 / 24.0) @ d.reshape(nn))
    # vec-transpose permutation: row-major index (i, j) -> (j, i).
    perm = np.arange(nn).reshape(n, n).T.reshape(nn)
    sym = 0.5 * (eye + eye[perm])
    return sym @ p, sym @ s


def integrate_covariance(a, d, config=None):
    """Covariance after integrating dV/dt = A V + V A^T + D.

    Composes the one-step affine map by binary squaring; raises Diverged as
    soon as the composed map overflows (unstable drift) or the final
    covariance exceeds DIVERGENCE_LIMIT.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    if a.shape != d.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"A and D must be square and matched, got {a.shape} vs {d.shape}")
    cfg = config if config is not None else default_config(a)
    n = a.shape[0]
    v0 = cfg.v0 if cfg.v0 is not None else 0.5 * np.eye(n)
    v0 = np.asarray(v0, dtype=float)
    if v0.shape != a.shape:
        raise ValueError(f"v0 must have shape {a.shape}, got {v0.shape}")

    base_p, base_s = _affine_step(a, d, cfg.dt)
    acc_p = np.eye(n * n)
    acc_s = np.zeros(n * n)
    remaining = cfg.n_steps
    with np.errstate(over="ignore", invalid="ignore"):
        while remaining:
            if remaining & 1:
                acc_s = base_p @ acc_s + base_s
                acc_p = base_p @ acc_p
            remaining >>= 1
            if remaining:
                base_s = base_p @ base_s + base_s
                base_p = base_p @ base_p
            if not (np.all(np.isfinite(acc_p)) and np.all(np.isfinite(base_p))):
                raise Diverged("integration overflowed; drift is not decaying")
    v = (acc_p @ v0.reshape(n * n) + acc_s).reshape(n, n)
    v = 0.5 * (v + v.T)
    if not np.all(np.isfinite(v)) or float(np.max(np.abs(v))) > DIVERGENCE_LIMIT:
        raise Diverged(f"covariance norm exceeded {DIVERGENCE_LIMIT:g}")
    return v


def lyapunov_residual(a, d, v):
    """Defect ||A V + V A^T + D||_inf of a candidate steady state."""
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    v = getattr(v, "v", v)
    v = np.asarray(v, dtype=float)
    return mat_inf_norm(a @ v + v @ a.T + d)


def verify_steady_state(p, cov, tol=ORACLE_TOL, config=None):
    """Cross-check a direct steady state against the integrator.

    Integrates from vacuum with the default schedule (unless one is given)
    and demands max-entry agreement within tol; raises OracleMismatch
    otherwise.  Returns the observed deviation.
    """
    der = derive_params(p)
    a = build_drift(p, der)
    d = build_diffusion(p, der)
    v_ode = integrate_covariance(a, d, config)
    v = getattr(cov, "v", cov)
    dev = float(np.max(np.abs(np.asarray(v, dtype=float) - v_ode)))
    if not (dev <= tol):
        raise OracleMismatch(
            f"steady state differs from integrated covariance by {dev:.3e} "
            f"(tol {tol:g})")
    return dev

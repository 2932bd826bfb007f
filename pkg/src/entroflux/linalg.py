"""Small dense real linear algebra for the steady-state solver.

Everything here is deliberately explicit: elimination with a deterministic
pivot rule, a Kronecker-product Lyapunov solve, cofactor determinants and a
Routh-Hurwitz stability test that never touches an eigensolver.  Determinism
matters because sweep output is compared byte-for-byte in regression tests,
so the same numbers must come out on every run and every thread count.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrix

# Centralised tolerances; tests import these rather than re-declaring them.
SOLVE_RTOL = 1e-10        # linear/Lyapunov residual, relative to the data
PIVOT_RTOL = 1e-14        # pivot threshold, relative to ||M||_inf
PSD_SLACK = 1e-12         # allowed negativity of principal minors
STABILITY_SLACK = 1e-12   # Routh-Hurwitz boundary margin, absolute


def _check_square(m, name="matrix"):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"{name} must be square and non-empty, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def mat_inf_norm(m):
    """Induced infinity norm (max absolute row sum)."""
    m = np.asarray(m, dtype=float)
    return float(np.max(np.sum(np.abs(m), axis=1)))


def linear_solve(m, b):
    """Solve M x = b by Gaussian elimination with partial pivoting.

    Pivots are chosen as the largest absolute entry in the column, ties
    broken by the lowest row index, so the arithmetic (and hence the output
    bytes downstream) is identical across runs.  Raises SingularMatrix when
    a pivot magnitude drops below PIVOT_RTOL * ||M||_inf.
    """
    a = _check_square(m, "M")
    n = a.shape[0]
    rhs = np.asarray(b, dtype=float)
    if rhs.shape != (n,):
        raise ValueError(f"b must have shape ({n},), got {rhs.shape}")
    if not np.all(np.isfinite(rhs)):
        raise ValueError("b contains non-finite entries")

    threshold = PIVOT_RTOL * mat_inf_norm(a)
    aug = np.concatenate([a, rhs.reshape(n, 1)], axis=1)
    for k in range(n):
        # np.argmax returns the first maximum: lowest-index tie-break.
        p = k + int(np.argmax(np.abs(aug[k:, k])))
        piv = aug[p, k]
        if abs(piv) <= threshold or piv == 0.0:
            raise SingularMatrix(
                f"pivot {abs(piv):.3e} below threshold {threshold:.3e} in column {k}")
        if p != k:
            aug[[k, p]] = aug[[p, k]]
        factors = aug[k + 1:, k] / piv
        aug[k + 1:, k:] -= np.outer(factors, aug[k, k:])
    x = np.empty(n)
    for k in range(n - 1, -1, -1):
        x[k] = (aug[k, n] - aug[k, k + 1:n] @ x[k + 1:]) / aug[k, k]
    return x


def solve_lyapunov(a, d):
    """Steady-state covariance V of A V + V A^T = -D.

    Row-major vectorisation turns the equation into
    (kron(A, I) + kron(I, A)) vec(V) = -vec(D); the dense n^2 x n^2 system
    goes through linear_solve and the result is symmetrised.
    """
    a = _check_square(a, "A")
    d = _check_square(d, "D")
    if a.shape != d.shape:
        raise ValueError(f"shape mismatch: A {a.shape} vs D {d.shape}")
    n = a.shape[0]
    eye = np.eye(n)
    op = np.kron(a, eye) + np.kron(eye, a)
    v = linear_solve(op, -d.reshape(n * n)).reshape(n, n)
    return 0.5 * (v + v.T)


@dataclass(frozen=True)
class QuarticCoeffs:
    """Monic quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0."""

    c0: float
    c1: float
    c2: float
    c3: float
    c4: float = 1.0

    def __post_init__(self):
        if self.c4 != 1.0:
            raise ValueError("quartic must be monic (c4 = 1)")

    def as_array(self):
        """Coefficients in highest-power-first order (np.roots convention)."""
        return np.array([self.c4, self.c3, self.c2, self.c1, self.c0])

    def eval(self, x):
        return (((x + self.c3) * x + self.c2) * x + self.c1) * x + self.c0


def characteristic_quartic(a):
    """Characteristic polynomial of a 4x4 matrix, det(x I - A).

    Faddeev-LeVerrier recursion: no eigensolver, division only by small
    integers, exact for exactly representable inputs.
    """
    a = _check_square(a, "A")
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {a.shape}")
    eye = np.eye(4)
    m = a.copy()
    c3 = -float(np.trace(m))
    m = a @ (m + c3 * eye)
    c2 = -float(np.trace(m)) / 2.0
    m = a @ (m + c2 * eye)
    c1 = -float(np.trace(m)) / 3.0
    m = a @ (m + c1 * eye)
    c0 = -float(np.trace(m)) / 4.0
    return QuarticCoeffs(c0=c0, c1=c1, c2=c2, c3=c3)


def routh_hurwitz_stable(q):
    """True when all roots of the monic quartic lie strictly in Re < 0.

    Hurwitz conditions: c3, c2, c1, c0 > 0 and
    c1 c2 c3 - c1^2 - c3^2 c0 > 0.  Values within STABILITY_SLACK of zero
    count as unstable, so boundary cases never pass.
    """
    disc = q.c1 * q.c2 * q.c3 - q.c1 * q.c1 - q.c3 * q.c3 * q.c0
    return all(t > STABILITY_SLACK for t in (q.c3, q.c2, q.c1, q.c0, disc))


def _shifted_quartic(q, s):
    """Coefficients of p(x - s) for monic p; shifts every root by +s."""
    c3 = q.c3 - 4.0 * s
    c2 = q.c2 - 3.0 * q.c3 * s + 6.0 * s * s
    c1 = q.c1 - 2.0 * q.c2 * s + 3.0 * q.c3 * s * s - 4.0 * s ** 3
    c0 = q.c0 - q.c1 * s + q.c2 * s * s - q.c3 * s ** 3 + s ** 4
    return QuarticCoeffs(c0=c0, c1=c1, c2=c2, c3=c3)


def stability_margin(q, iterations=80):
    """Largest s >= 0 with every root of the quartic left of -s.

    Bisection on the shifted polynomial p(x - s): p is stable iff all roots
    are left of zero, p(. - s) is stable iff all roots of p are left of -s.
    Since sum(-Re roots) = c3, the smallest decay rate is at most c3/4, which
    ends the bracket.  Returns 0.0 for unstable input.  The result is used to
    size integration horizons, so a slightly conservative lower bound is fine.
    """
    if not routh_hurwitz_stable(q):
        return 0.0
    lo = 0.0
    hi = q.c3 / 4.0
    # The mean decay rate c3/4 bounds the minimum; equality needs four equal
    # real parts, in which case the shifted c3 hits zero and fails the test.
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        # q(x - mid) has roots r + mid: stable iff every root sits left of -mid
        if routh_hurwitz_stable(_shifted_quartic(q, mid)):
            lo = mid
        else:
            hi = mid
    return lo


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def _det3(m):
    return (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))


def det_small(m):
    """Determinant: explicit cofactor expansion through 4x4 (fixed operation
    order, no pivoting noise), numpy beyond that."""
    m = _check_square(m)
    n = m.shape[0]
    if n == 1:
        return float(m[0, 0])
    if n == 2:
        return float(_det2(m))
    if n == 3:
        return float(_det3(m))
    if n == 4:
        return float(m[0, 0] * _det3(m[1:, 1:])
                     - m[0, 1] * _det3(m[1:][:, [0, 2, 3]])
                     + m[0, 2] * _det3(m[1:][:, [0, 1, 3]])
                     - m[0, 3] * _det3(m[1:][:, [0, 1, 2]]))
    return float(np.linalg.det(m))


def is_symmetric_psd(m, tol=PSD_SLACK):
    """Sylvester-style check: symmetric within tol and every leading
    principal minor >= -tol."""
    m = _check_square(m)
    if float(np.max(np.abs(m - m.T))) > tol:
        return False
    for k in range(1, m.shape[0] + 1):
        if det_small(m[:k, :k]) < -tol:
            return False
    return True


def symplectic_form(n_modes):
    """Commutation form for quadrature order (X1, Y1, X2, Y2, ...):
    block-diagonal [[0, 1], [-1, 0]] per mode."""
    if n_modes < 1:
        raise ValueError("need at least one mode")
    w = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        w[2 * k, 2 * k + 1] = 1.0
        w[2 * k + 1, 2 * k] = -1.0
    return w

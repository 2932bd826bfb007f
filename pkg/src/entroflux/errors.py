"""Exception taxonomy shared across the package.

Everything raised on purpose derives from EntrofluxError so callers (and the
CLI) can tell deliberate failures from bugs. I/O problems are left to the
builtin OSError.
"""


class EntrofluxError(Exception):
    """Base class for all deliberate package errors."""


class SingularMatrix(EntrofluxError):
    """A pivot fell below the singularity threshold during elimination."""


class Unstable(EntrofluxError):
    """The drift matrix has a non-decaying mode; no steady state exists."""


class DegenerateDiffusion(EntrofluxError):
    """A diffusion diagonal entry is (near-)zero; the entropy-production
    formulas divide by it."""


class NonPositiveDeterminant(EntrofluxError):
    """A covariance determinant is non-positive; its entropy is undefined."""


class ComplexSymplecticEigenvalue(EntrofluxError):
    """The partial-transpose discriminant is negative beyond tolerance."""


class NoPhysicalRoot(EntrofluxError):
    """The mean-field photon-number equation has no admissible root."""


class UnstableBranch(EntrofluxError):
    """The selected mean-field branch sits on the unstable slope."""


class Diverged(EntrofluxError):
    """Time integration blew up; the drift passed to the oracle decays
    nowhere."""


class ConfigError(EntrofluxError):
    """Malformed, unknown or out-of-range scenario configuration."""


class InsufficientData(EntrofluxError):
    """Too few finite points to draw anything."""


class OracleMismatch(EntrofluxError):
    """Direct steady state and integrated steady state disagree."""

"""Steady states, entropy production and quantum correlations of two
dissipative oscillators under coherent (measurement-free) feedback.

The drift/diffusion model, its Lyapunov steady state, the stationary
thermodynamic functionals, an independent time-integration oracle, an
optomechanical front-end and a sweep/CSV/SVG layer.  Matplotlib rendering
lives in entroflux.plotting and is imported lazily so the numerical core
stays light.
"""

from .errors import (ComplexSymplecticEigenvalue, ConfigError,
                     DegenerateDiffusion, Diverged, EntrofluxError,
                     InsufficientData, NonPositiveDeterminant, NoPhysicalRoot,
                     OracleMismatch, SingularMatrix, Unstable, UnstableBranch)
from .linalg import (QuarticCoeffs, characteristic_quartic, det_small,
                     is_symmetric_psd, linear_solve, routh_hurwitz_stable,
                     solve_lyapunov, stability_margin, symplectic_form)
from .model import (CovMatrix, DerivedParams, FeedbackParams, build_diffusion,
                    build_drift, check_stability, derive_params, steady_state,
                    thermal_occupation)
from .optomech import (OptoParams, OptoSteadyState, generic_from_detuning,
                       map_to_generic, mean_field_steady_state, select_branch)
from .oracle import (OdeConfig, default_config, integrate_covariance,
                     lyapunov_residual, verify_steady_state)
from .presets import get_preset, preset_description, preset_names
from .sweep import (OUTPUT_FIELDS, ResultRow, Scenario, SweepSpec, emit_csv,
                    emit_svg, format_number, parse_config, run_sweep)
from .thermo import (ThermoReport, entropy_production_explicit,
                     entropy_production_trace, irreversible_drift,
                     log_negativity, mode_occupations, mutual_information,
                     physicality_flag, steady_report, wigner_entropy)

__version__ = "0.1.0"

__all__ = [
    "ComplexSymplecticEigenvalue", "ConfigError", "DegenerateDiffusion",
    "Diverged", "EntrofluxError", "InsufficientData",
    "NonPositiveDeterminant", "NoPhysicalRoot", "OracleMismatch",
    "SingularMatrix", "Unstable", "UnstableBranch",
    "QuarticCoeffs", "characteristic_quartic", "det_small",
    "is_symmetric_psd", "linear_solve", "routh_hurwitz_stable",
    "solve_lyapunov", "stability_margin", "symplectic_form",
    "CovMatrix", "DerivedParams", "FeedbackParams", "build_diffusion",
    "build_drift", "check_stability", "derive_params", "steady_state",
    "thermal_occupation",
    "OptoParams", "OptoSteadyState", "generic_from_detuning",
    "map_to_generic", "mean_field_steady_state", "select_branch",
    "OdeConfig", "default_config", "integrate_covariance",
    "lyapunov_residual", "verify_steady_state",
    "get_preset", "preset_description", "preset_names",
    "OUTPUT_FIELDS", "ResultRow", "Scenario", "SweepSpec", "emit_csv",
    "emit_svg", "format_number", "parse_config", "run_sweep",
    "ThermoReport", "entropy_production_explicit",
    "entropy_production_trace", "irreversible_drift", "log_negativity",
    "mode_occupations", "mutual_information", "physicality_flag",
    "steady_report", "wigner_entropy",
    "__version__",
]

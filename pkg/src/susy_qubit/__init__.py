"""Exactly solvable non-Hermitian driven two-level system.

Closed-form complex drivings (tanh/tan families with a complex time
displacement), the analytic qubit amplitudes they induce in all three
spectral regimes, an independent fixed-step RK4 oracle, population
observables, and preset scenarios with deterministic CSV export.
"""

from .analytic import (
    SolutionCoefficients,
    analytic_trajectory,
    decaying_coefficients,
    eval_a1,
    eval_a1_deriv,
    eval_a2,
    intertwine_a,
    intertwine_b,
    solve_coefficients,
)
from .core import (
    AmplitudeOverflowError,
    Frame,
    InvalidParameterError,
    ModelParams,
    PoleProximityError,
    Regime,
    SpinorState,
    Trajectory,
    classify_regime,
    default_magnitude_cap,
    regime_constant,
)
from .driving import (
    DrivingSample,
    SeedBasis,
    eval_f,
    eval_f_deriv,
    eval_f_deriv_grid,
    eval_f_from_seed,
    eval_f_grid,
    partner_potentials,
    riccati_residual,
)
from .integrator import (
    ConvergenceLevel,
    IntegratorConfig,
    convergence_report,
    integrate,
)
from .kernels import KERNEL_BACKEND, available_backends
from .observables import (
    population_inversion,
    rotate_to_a,
    rotate_to_c,
    total_probability,
    trajectory_from_amplitudes,
    wdot_identity_residual,
)
from .scenarios import (
    CSV_COLUMNS,
    PRESET_NAMES,
    ConfigError,
    DeviationReport,
    GroundStateTouch,
    Scenario,
    UnknownPresetError,
    compare_trajectories,
    csv_bytes,
    decaying_limit_state,
    detect_ground_state_touches,
    emit_csv,
    parse_config,
    preset,
    read_csv,
    run,
    w_argmin,
    with_grid,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeOverflowError",
    "ConfigError",
    "ConvergenceLevel",
    "CSV_COLUMNS",
    "DeviationReport",
    "DrivingSample",
    "Frame",
    "GroundStateTouch",
    "IntegratorConfig",
    "InvalidParameterError",
    "KERNEL_BACKEND",
    "ModelParams",
    "PRESET_NAMES",
    "PoleProximityError",
    "Regime",
    "Scenario",
    "SeedBasis",
    "SolutionCoefficients",
    "SpinorState",
    "Trajectory",
    "UnknownPresetError",
    "analytic_trajectory",
    "available_backends",
    "classify_regime",
    "compare_trajectories",
    "convergence_report",
    "csv_bytes",
    "decaying_coefficients",
    "decaying_limit_state",
    "default_magnitude_cap",
    "detect_ground_state_touches",
    "emit_csv",
    "eval_a1",
    "eval_a1_deriv",
    "eval_a2",
    "eval_f",
    "eval_f_deriv",
    "eval_f_deriv_grid",
    "eval_f_from_seed",
    "eval_f_grid",
    "integrate",
    "intertwine_a",
    "intertwine_b",
    "parse_config",
    "partner_potentials",
    "population_inversion",
    "preset",
    "read_csv",
    "regime_constant",
    "riccati_residual",
    "rotate_to_a",
    "rotate_to_c",
    "run",
    "solve_coefficients",
    "total_probability",
    "trajectory_from_amplitudes",
    "w_argmin",
    "wdot_identity_residual",
    "with_grid",
]

"""Closed-form amplitudes from initial conditions, plus the first-order
ladder maps connecting the two components.

The single source of truth is the complex-exponential representation

    a1(t) = alpha1 * exp(s (t - t0)) + alpha2 * exp(-s (t - t0)),

with s the principal square root of k (purely imaginary for k < 0).  The
cosh/cos parameterizations are derived views used only in tests: their
constant extraction diverges exactly at the physically central decaying
limit, which this representation handles as alpha1 = 0 without branch
cuts.  At k = 0 the two exponentials lose independence and a linear branch
a1 = A + B*(t - t0) takes over.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Frame, InvalidParameterError, ModelParams, SpinorState, Trajectory
from .driving import eval_f, eval_f_grid
from .observables import rotate_to_a, trajectory_from_amplitudes


@dataclass(frozen=True)
class SolutionCoefficients:
    """Coefficients of the two exponentials (or of the k = 0 linear branch).

    For ``degenerate_linear`` the fields are reused as a1(t0) = alpha1 and
    da1/dt(t0) = alpha2.  The decaying branch is represented exactly by
    alpha1 = 0.
    """

    alpha1: complex
    alpha2: complex
    sqrt_k: complex
    k: float
    t0: float = 0.0
    degenerate_linear: bool = False


def solve_coefficients(
    params: ModelParams,
    a1_0: complex,
    a2_0: complex,
    t0: float = 0.0,
) -> SolutionCoefficients:
    """Coefficients reproducing the initial pair (a1, a2) at time t0.

    The initial slope comes from the first-order system:
    da1/dt = f*a1 + i*a2.
    """
    if a1_0 == 0 and a2_0 == 0:
        raise InvalidParameterError("initial state must be nonzero")
    f0 = eval_f(params, t0).f
    da1_0 = f0 * a1_0 + 1j * a2_0
    if params.k == 0:
        return SolutionCoefficients(
            alpha1=complex(a1_0), alpha2=complex(da1_0),
            sqrt_k=0j, k=0.0, t0=t0, degenerate_linear=True,
        )
    s = cmath.sqrt(complex(params.k))
    return SolutionCoefficients(
        alpha1=0.5 * (a1_0 + da1_0 / s),
        alpha2=0.5 * (a1_0 - da1_0 / s),
        sqrt_k=s,
        k=params.k,
        t0=t0,
    )


def decaying_coefficients(params: ModelParams, a1_0: complex, t0: float = 0.0) -> SolutionCoefficients:
    """The bounded decaying branch (alpha1 exactly zero); requires k > 0."""
    if params.k <= 0:
        raise InvalidParameterError("the decaying branch requires k > 0")
    return SolutionCoefficients(
        alpha1=0j, alpha2=complex(a1_0),
        sqrt_k=cmath.sqrt(complex(params.k)), k=params.k, t0=t0,
    )


def _a1_values(coeffs: SolutionCoefficients, ts):
    tau = np.asarray(ts, dtype=float) - coeffs.t0
    if coeffs.degenerate_linear:
        return coeffs.alpha1 + coeffs.alpha2 * tau
    s = coeffs.sqrt_k
    return coeffs.alpha1 * np.exp(s * tau) + coeffs.alpha2 * np.exp(-s * tau)


def _da1_values(coeffs: SolutionCoefficients, ts):
    tau = np.asarray(ts, dtype=float) - coeffs.t0
    if coeffs.degenerate_linear:
        return coeffs.alpha2 * np.ones_like(tau, dtype=complex)
    s = coeffs.sqrt_k
    return s * (coeffs.alpha1 * np.exp(s * tau) - coeffs.alpha2 * np.exp(-s * tau))


def eval_a1(coeffs: SolutionCoefficients, t: float) -> complex:
    """Closed-form first amplitude at time t."""
    return complex(_a1_values(coeffs, t))


def eval_a1_deriv(coeffs: SolutionCoefficients, t: float) -> complex:
    """Exact time derivative of the first amplitude."""
    return complex(_da1_values(coeffs, t))


def eval_a2(
    coeffs: SolutionCoefficients, params: ModelParams, t: float,
    magnitude_cap: float | None = None,
) -> complex:
    """Second amplitude -i*(da1/dt - f*a1) using the exact closed-form slope."""
    f = eval_f(params, t, magnitude_cap).f
    return complex(-1j * (eval_a1_deriv(coeffs, t) - f * eval_a1(coeffs, t)))


def _central_difference(fn: Callable[[float], complex], t: float, step: float) -> complex:
    # divide by the realized spacing, not the nominal 2*step: at large t
    # the rounding of t +- step would otherwise bias the quotient by
    # ulp(t)/step relative
    t_plus = t + step
    t_minus = t - step
    return (fn(t_plus) - fn(t_minus)) / (t_plus - t_minus)


def intertwine_b(
    a1_fn: Callable[[float], complex],
    params: ModelParams,
    t: float,
    deriv: Callable[[float], complex] | None = None,
    step: float = 1e-5,
    allow_numeric: bool = True,
) -> complex:
    """Map a first-component solution to the second: -i*(d/dt - f) a1.

    With ``deriv`` the exact derivative is used; otherwise a central
    difference of width ``step`` (requires ``allow_numeric``).
    """
    if deriv is not None:
        da = deriv(t)
    elif allow_numeric:
        da = _central_difference(a1_fn, t, step)
    else:
        raise InvalidParameterError(
            "analytic derivative required but not supplied for this input"
        )
    f = eval_f(params, t).f
    return -1j * (da - f * a1_fn(t))


def intertwine_a(
    a2_fn: Callable[[float], complex],
    params: ModelParams,
    t: float,
    deriv: Callable[[float], complex] | None = None,
    step: float = 1e-5,
    allow_numeric: bool = True,
) -> complex:
    """Inverse ladder map: i*(-d/dt - f) a2; composing with
    :func:`intertwine_b` returns the original function."""
    if deriv is not None:
        da = deriv(t)
    elif allow_numeric:
        da = _central_difference(a2_fn, t, step)
    else:
        raise InvalidParameterError(
            "analytic derivative required but not supplied for this input"
        )
    f = eval_f(params, t).f
    return 1j * (-da - f * a2_fn(t))


def analytic_trajectory(
    params: ModelParams,
    initial: SpinorState,
    grid: np.ndarray,
    magnitude_cap: float | None = None,
) -> Trajectory:
    """Evaluate the closed-form solution through ``initial`` on a grid."""
    state = rotate_to_a(initial)
    coeffs = solve_coefficients(params, state.amp1, state.amp2, t0=state.t)
    grid = np.asarray(grid, dtype=float)
    fs = eval_f_grid(params, grid, magnitude_cap)
    a1 = np.asarray(_a1_values(coeffs, grid), dtype=complex)
    da1 = np.asarray(_da1_values(coeffs, grid), dtype=complex)
    a2 = -1j * (da1 - fs * a1)
    return trajectory_from_amplitudes(
        params, grid, a1, a2, Frame.A, method="analytic", magnitude_cap=magnitude_cap
    )

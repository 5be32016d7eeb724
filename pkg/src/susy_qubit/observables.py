"""Frame rotation, population inversion, total probability, and the
identity tying the inversion rate to the driving's imaginary part.

The two frames are related by the pi/4 spin rotation

    c1 = (a1 - a2)/sqrt(2),   c2 = (a1 + a2)/sqrt(2),

an exact involutive pair at machine precision.  The population inversion is
W = |c1|^2 - |c2|^2 computed from raw (unnormalized) amplitudes; the
normalized column W/P is emitted separately as a clearly marked extension.
"""

from __future__ import annotations

import math

import numpy as np

from .core import Frame, ModelParams, SpinorState, Trajectory
from .driving import eval_f_grid

_SQRT2 = math.sqrt(2.0)


def rotate_to_c(state: SpinorState) -> SpinorState:
    """Rotate a rotated-frame state into the lab frame (no-op if already there)."""
    if state.frame is Frame.C:
        return state
    return SpinorState(
        t=state.t,
        amp1=(state.amp1 - state.amp2) / _SQRT2,
        amp2=(state.amp1 + state.amp2) / _SQRT2,
        frame=Frame.C,
    )


def rotate_to_a(state: SpinorState) -> SpinorState:
    """Inverse of :func:`rotate_to_c`."""
    if state.frame is Frame.A:
        return state
    return SpinorState(
        t=state.t,
        amp1=(state.amp1 + state.amp2) / _SQRT2,
        amp2=(state.amp2 - state.amp1) / _SQRT2,
        frame=Frame.A,
    )


def rotate_arrays_to_c(a1: np.ndarray, a2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return (a1 - a2) / _SQRT2, (a1 + a2) / _SQRT2


def rotate_arrays_to_a(c1: np.ndarray, c2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return (c1 + c2) / _SQRT2, (c2 - c1) / _SQRT2


def population_inversion(state: SpinorState) -> float:
    """W = |c1|^2 - |c2|^2; for a rotated-frame state the equivalent
    bilinear form -2*Re(a1 * conj(a2)) is used directly."""
    if state.frame is Frame.A:
        a1, a2 = state.amp1, state.amp2
        return -2.0 * (a1.real * a2.real + a1.imag * a2.imag)
    c1, c2 = state.amp1, state.amp2
    return (c1.real ** 2 + c1.imag ** 2) - (c2.real ** 2 + c2.imag ** 2)


def total_probability(state: SpinorState) -> float:
    """P = |amp1|^2 + |amp2|^2, identical in both frames (unitary rotation)."""
    z1, z2 = state.amp1, state.amp2
    return (z1.real ** 2 + z1.imag ** 2) + (z2.real ** 2 + z2.imag ** 2)


def trajectory_from_amplitudes(
    params: ModelParams,
    grid: np.ndarray,
    amp1: np.ndarray,
    amp2: np.ndarray,
    frame: Frame,
    method: str,
    magnitude_cap: float | None = None,
) -> Trajectory:
    """Assemble a full trajectory (both frames, driving, W, P) from one
    frame's amplitude arrays."""
    grid = np.asarray(grid, dtype=float)
    amp1 = np.asarray(amp1, dtype=complex)
    amp2 = np.asarray(amp2, dtype=complex)
    if frame is Frame.A:
        a1, a2 = amp1, amp2
        c1, c2 = rotate_arrays_to_c(a1, a2)
    else:
        c1, c2 = amp1, amp2
        a1, a2 = rotate_arrays_to_a(c1, c2)
    w = np.abs(c1) ** 2 - np.abs(c2) ** 2
    p = np.abs(c1) ** 2 + np.abs(c2) ** 2
    f = eval_f_grid(params, grid, magnitude_cap)
    return Trajectory(
        params=params, grid=grid, a1=a1, a2=a2, c1=c1, c2=c2,
        f=f, w=w, p=p, frame=frame, method=method,
    )


def wdot_identity_residual(traj: Trajectory, index: int) -> float:
    """|dW/dt - 4 * Im(f) * Im(a1 * conj(a2))| at an interior grid index.

    dW/dt is taken by central differences, so the residual carries the
    usual O(h^2) truncation; the factor 4*Im(f)*Im(a1*conj(a2)) is the
    exact inversion rate of the equations of motion.
    """
    if not 1 <= index <= len(traj) - 2:
        raise IndexError(
            f"index {index} is not interior to a trajectory of {len(traj)} points"
        )
    wdot = (traj.w[index + 1] - traj.w[index - 1]) / (
        traj.grid[index + 1] - traj.grid[index - 1]
    )
    a1 = traj.a1[index]
    a2 = traj.a2[index]
    rate = 4.0 * traj.f[index].imag * (a1 * np.conj(a2)).imag
    return float(abs(wdot - rate))

"""Domain types shared by every other module: model parameters, spectral
regime classification, spinor states, trajectories and error types.

Times are dimensionless throughout (physical time multiplied by the level
splitting); the optional ``delta`` parameter exists only to convert results
back to physical units on output.  Amplitude pairs live either in the rotated
frame in which the equations of motion decouple (``Frame.A``) or in the lab
frame whose components give the level populations (``Frame.C``).

All types are immutable values after construction and safe to share across
threads.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from enum import Enum

import numpy as np

DEFAULT_MAGNITUDE_CAP = 1e12
MAGNITUDE_CAP_ENV = "SUSY_QUBIT_MAG_CAP"


class InvalidParameterError(ValueError):
    """Raised when model parameters or call arguments are out of domain."""


class PoleProximityError(RuntimeError):
    """Driving magnitude exceeded the configured cap (singular driving).

    Carries ``t_last``, the last time at which evaluation was still valid
    (for single-point evaluation this is the offending time itself).
    """

    def __init__(self, message: str, t_last: float):
        super().__init__(message)
        self.t_last = t_last


class AmplitudeOverflowError(RuntimeError):
    """An integrated amplitude exceeded the magnitude cap (unbounded branch).

    Carries ``t_last``, the last time with a valid state.
    """

    def __init__(self, message: str, t_last: float):
        super().__init__(message)
        self.t_last = t_last


def default_magnitude_cap() -> float:
    """Magnitude cap for driving poles and amplitude overflow.

    Defaults to 1e12; the environment variable SUSY_QUBIT_MAG_CAP overrides
    it (read at call time).
    """
    raw = os.environ.get(MAGNITUDE_CAP_ENV)
    if raw is None:
        return DEFAULT_MAGNITUDE_CAP
    try:
        cap = float(raw)
    except ValueError as exc:
        raise InvalidParameterError(
            f"{MAGNITUDE_CAP_ENV}={raw!r} is not a valid float"
        ) from exc
    if not (math.isfinite(cap) and cap > 0):
        raise InvalidParameterError(f"{MAGNITUDE_CAP_ENV} must be finite and > 0")
    return cap


class Regime(Enum):
    """Spectral regime of the driving, a total function of k.

    Both boundaries k = 0 and k = -1 belong to the hyperbolic regime: the
    hyperbolic formulas stay finite there, and k -> -1 recovers the
    nondriven limit continuously.
    """

    DECAYING = "decaying"                       # k > 0
    HYPERBOLIC_OSCILLATORY = "hyperbolic"       # -1 <= k <= 0
    TRIGONOMETRIC_OSCILLATORY = "trigonometric"  # k < -1


class Frame(Enum):
    A = "a"  # rotated frame (decoupled equations of motion)
    C = "c"  # lab frame (populations)


def classify_regime(k: float) -> Regime:
    """Classify the spectral regime of a finite k."""
    if not math.isfinite(k):
        raise InvalidParameterError(f"k must be finite, got {k!r}")
    if k > 0:
        return Regime.DECAYING
    if k >= -1:
        return Regime.HYPERBOLIC_OSCILLATORY
    return Regime.TRIGONOMETRIC_OSCILLATORY


@dataclass(frozen=True)
class ModelParams:
    """Regime parameter k plus the complex displacement theta + i*phi.

    k and the displacement are dimensionless (units of the level splitting
    and its inverse respectively).  ``delta`` is an optional physical energy
    split used only by :meth:`to_physical_time`.
    """

    k: float
    theta: float = 0.0
    phi: float = 0.0
    delta: float | None = None

    def __post_init__(self):
        for name in ("k", "theta", "phi"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise InvalidParameterError(f"{name} must be a finite real, got {value!r}")
        if self.delta is not None and not (
            isinstance(self.delta, (int, float))
            and math.isfinite(self.delta)
            and self.delta > 0
        ):
            raise InvalidParameterError(f"delta must be > 0 when given, got {self.delta!r}")

    @property
    def regime(self) -> Regime:
        return classify_regime(self.k)

    @property
    def eta(self) -> complex:
        """Complex displacement theta + i*phi."""
        return complex(self.theta, self.phi)

    @property
    def sqrt_k(self) -> complex:
        """Principal square root of k (purely imaginary for k < 0)."""
        return cmath.sqrt(complex(self.k))

    def to_physical_time(self, t: float) -> float:
        """Convert a dimensionless time back to physical units (requires delta)."""
        if self.delta is None:
            raise InvalidParameterError("delta was not supplied; times are dimensionless")
        return t / self.delta


def regime_constant(params: ModelParams) -> float:
    """The active regime constant: sqrt(1+k), sqrt(1-|k|) or sqrt(|k|-1).

    Exactly one is active per parameter set; it is zero only at k = -1,
    where the driving vanishes identically.
    """
    k = params.k
    regime = classify_regime(k)
    if regime is Regime.DECAYING:
        return math.sqrt(1.0 + k)
    if regime is Regime.HYPERBOLIC_OSCILLATORY:
        return math.sqrt(1.0 - abs(k))
    return math.sqrt(abs(k) - 1.0)


@dataclass(frozen=True)
class SpinorState:
    """Two complex amplitudes at a time t, tagged with their frame.

    No normalization is imposed: the dynamics is non-Hermitian and
    |amp1|^2 + |amp2|^2 may exceed 1.
    """

    t: float
    amp1: complex
    amp2: complex
    frame: Frame


@dataclass
class Trajectory:
    """Time grid plus per-step amplitudes (both frames), driving and observables.

    ``a1``/``a2`` are the rotated-frame amplitudes, ``c1``/``c2`` the lab-frame
    ones, ``f`` the complex driving on the grid, ``w`` the population
    inversion |c1|^2 - |c2|^2 and ``p`` the total probability
    |c1|^2 + |c2|^2.  All arrays share one length; the grid is strictly
    increasing (and uniform when produced by the integrator).
    """

    params: ModelParams
    grid: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    f: np.ndarray
    w: np.ndarray
    p: np.ndarray
    frame: Frame = Frame.A   # frame the trajectory was produced in
    method: str = "analytic"

    def __post_init__(self):
        n = len(self.grid)
        for name in ("a1", "a2", "c1", "c2", "f", "w", "p"):
            if len(getattr(self, name)) != n:
                raise InvalidParameterError(f"array {name} does not match grid length {n}")
        if n > 1 and not np.all(np.diff(self.grid) > 0):
            raise InvalidParameterError("grid must be strictly increasing")

    def __len__(self) -> int:
        return len(self.grid)

    @property
    def w_over_p(self) -> np.ndarray:
        """Normalized inversion W/P (an extension column; W itself is raw)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.p != 0.0, self.w / self.p, np.nan)

    def state_at(self, index: int, frame: Frame = Frame.A) -> SpinorState:
        if frame is Frame.A:
            return SpinorState(
                float(self.grid[index]),
                complex(self.a1[index]),
                complex(self.a2[index]),
                Frame.A,
            )
        return SpinorState(
            float(self.grid[index]),
            complex(self.c1[index]),
            complex(self.c2[index]),
            Frame.C,
        )

"""Complex driving function (superpotential), its seed-based construction,
and the algebraic identities that pin it down.

The driving is piecewise in k:

    k > 0:        sqrt(1+k)   * tanh[sqrt(1+k)  (t + theta + i phi)]
    -1 <= k <= 0: sqrt(1-|k|) * tanh[sqrt(1-|k|)(t + theta + i phi)]
    k < -1:      -sqrt(|k|-1) * tan [sqrt(|k|-1)(t + theta + i phi)]

The first two branches share one formula (the constants coincide in value)
but are reported as distinct regimes.  The derivative is always the exact
closed form (sech^2 / sec^2 with complex argument), never a finite
difference, so the Riccati and partner-potential checks stay sharp.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    InvalidParameterError,
    ModelParams,
    PoleProximityError,
    Regime,
    default_magnitude_cap,
    regime_constant,
)

# Beyond this |argument| the real tanh/tan saturation is exact at double
# precision (corrections < 1e-150); clipping avoids cosh/sinh overflow.
_SATURATION = 175.0


def _tanh_split(x, y):
    """tanh(x + i y) from real parts, overflow-safe for any finite x."""
    x = np.clip(x, -_SATURATION, _SATURATION)
    d = np.cosh(2.0 * x) + np.cos(2.0 * y)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.sinh(2.0 * x) / d + 1j * (np.sin(2.0 * y) / d)


def _tan_split(x, y):
    """tan(x + i y) from real parts, overflow-safe for any finite y."""
    y = np.clip(y, -_SATURATION, _SATURATION)
    d = np.cos(2.0 * x) + np.cosh(2.0 * y)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.sin(2.0 * x) / d + 1j * (np.sinh(2.0 * y) / d)


def _sech2_split(x, y):
    """sech^2(x + i y); returns 0 where the true value underflows."""
    x = np.clip(x, -_SATURATION, _SATURATION)
    c = np.cosh(x) * np.cos(y) + 1j * (np.sinh(x) * np.sin(y))
    with np.errstate(divide="ignore", invalid="ignore"):
        return 1.0 / (c * c)


def _sec2_split(x, y):
    """sec^2(x + i y); returns 0 where the true value underflows."""
    y = np.clip(y, -_SATURATION, _SATURATION)
    c = np.cos(x) * np.cosh(y) - 1j * (np.sin(x) * np.sinh(y))
    with np.errstate(divide="ignore", invalid="ignore"):
        return 1.0 / (c * c)


def _f_values(params: ModelParams, t):
    """Driving values on a scalar or array t; no magnitude guard."""
    c = regime_constant(params)
    if params.regime is Regime.TRIGONOMETRIC_OSCILLATORY:
        return -c * _tan_split(c * (np.asarray(t) + params.theta), c * params.phi)
    return c * _tanh_split(c * (np.asarray(t) + params.theta), c * params.phi)


def _f_derivative_values(params: ModelParams, t):
    """Exact closed-form derivative of the driving on a scalar or array t."""
    c = regime_constant(params)
    if params.regime is Regime.TRIGONOMETRIC_OSCILLATORY:
        return -(c * c) * _sec2_split(c * (np.asarray(t) + params.theta), c * params.phi)
    return (c * c) * _sech2_split(c * (np.asarray(t) + params.theta), c * params.phi)


def _check_magnitude(values, ts, cap: float):
    mags = np.abs(values)
    bad = ~np.isfinite(mags) | (mags > cap)
    if np.any(bad):
        t_bad = float(np.asarray(ts, dtype=float).ravel()[np.argmax(np.ravel(bad))])
        raise PoleProximityError(
            f"driving magnitude exceeds cap {cap:g} near t = {t_bad:.6g} "
            "(singular driving; real trigonometric tangent has poles when phi = 0)",
            t_last=t_bad,
        )


@dataclass(frozen=True)
class DrivingSample:
    """Value of the complex driving at one time, with its real/imag split.

    ``f_re`` and ``f_im`` satisfy f = f_re + i*f_im.
    """

    t: float
    f: complex
    f_re: float
    f_im: float

    @classmethod
    def from_value(cls, t: float, f: complex) -> "DrivingSample":
        return cls(t=t, f=f, f_re=f.real, f_im=f.imag)

    @property
    def coupling(self) -> complex:
        """The physical coupling (per unit splitting) is i*f, so its real
        part is -f_im and its imaginary part is f_re."""
        return 1j * self.f


def eval_f(params: ModelParams, t: float, magnitude_cap: float | None = None) -> DrivingSample:
    """Evaluate the regime-appropriate complex driving at time t.

    Raises PoleProximityError when |f| exceeds the magnitude cap, which
    signals singular driving (phi = 0 in the trigonometric regime).
    Evaluations closer than ~1e-8 to a real-line pole lose the denominator
    to cancellation and report as poles regardless of the cap.
    """
    if not math.isfinite(t):
        raise InvalidParameterError(f"t must be finite, got {t!r}")
    cap = default_magnitude_cap() if magnitude_cap is None else magnitude_cap
    value = complex(_f_values(params, t))
    _check_magnitude(value, t, cap)
    return DrivingSample.from_value(t, value)


def eval_f_grid(
    params: ModelParams, ts: np.ndarray, magnitude_cap: float | None = None
) -> np.ndarray:
    """Vectorized :func:`eval_f` over a time grid; returns complex values."""
    cap = default_magnitude_cap() if magnitude_cap is None else magnitude_cap
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(_f_values(params, ts), dtype=complex)
    _check_magnitude(values, ts, cap)
    return values


def eval_f_deriv(params: ModelParams, t: float, magnitude_cap: float | None = None) -> complex:
    """Exact derivative of the driving at time t (same pole handling)."""
    cap = default_magnitude_cap() if magnitude_cap is None else magnitude_cap
    value = complex(_f_derivative_values(params, t))
    _check_magnitude(value, t, cap)
    return value


def eval_f_deriv_grid(
    params: ModelParams, ts: np.ndarray, magnitude_cap: float | None = None
) -> np.ndarray:
    cap = default_magnitude_cap() if magnitude_cap is None else magnitude_cap
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(_f_derivative_values(params, ts), dtype=complex)
    _check_magnitude(values, ts, cap)
    return values


def partner_potentials(
    params: ModelParams, t: float, magnitude_cap: float | None = None
) -> tuple[complex, complex]:
    """The two partner potentials (v1, v2) at time t.

    v1 is the constant k exactly.  v2 is computed through its own closed
    form k - 2(k+1)/cos^2[(t+eta) sqrt(-1-k)] (complex square root and
    cosine), deliberately independent of the sech^2 route used for the
    driving derivative, so that the v2 == v1 - 2*df/dt check is a genuine
    two-route comparison.
    """
    k = params.k
    v1 = complex(k)
    s = cmath.sqrt(complex(-1.0 - k))
    try:
        c = cmath.cos((t + params.eta) * s)
        cc = c * c
        v2 = v1 - 2.0 * (k + 1.0) / cc if cc != 0 else complex(math.inf)
    except OverflowError:
        # cos^2 overflowed: the correction term underflows to zero.
        return v1, v1
    cap = default_magnitude_cap() if magnitude_cap is None else magnitude_cap
    if not (math.isfinite(v2.real) and math.isfinite(v2.imag)) or abs(v2) > cap:
        raise PoleProximityError(
            f"partner potential exceeds cap {cap:g} at t = {t:.6g}", t_last=t
        )
    return v1, v2


def riccati_residual(
    params: ModelParams, t: float, magnitude_cap: float | None = None
) -> complex:
    """df/dt + f^2 - (k+1) at time t; zero in exact arithmetic.

    Away from poles the magnitude stays below 1e-10 in double precision;
    the derivative goes through the sech^2/sec^2 route while f goes through
    tanh/tan, so the cancellation is not built in.
    """
    f = eval_f(params, t, magnitude_cap).f
    df = eval_f_deriv(params, t, magnitude_cap)
    return df + f * f - (params.k + 1.0)


@dataclass(frozen=True)
class SeedBasis:
    """Two independent real seed solutions plus mixing data defining u(t).

    The driving is the logarithmic derivative of
    u = mu1*u1 + (mu2/2 - i*lam/w0)*u2 evaluated at t + shift.  ``w0`` is
    the (constant) Wronskian u1*u2' - u1'*u2 and ``mu3`` is fixed by the
    mixing constraint mu2^2 - 4*mu1*mu3 = -4*lam^2/w0^2; it is stored for
    record only and never enters u(t).
    """

    u1: Callable[[float], float]
    u2: Callable[[float], float]
    du1: Callable[[float], float]
    du2: Callable[[float], float]
    mu1: float
    mu2: float
    lam: float
    shift: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.mu1) and self.mu1 > 0):
            raise InvalidParameterError(
                f"mu1 must be > 0 so that u(t) is nodeless, got {self.mu1!r}"
            )
        for name in ("mu2", "lam", "shift"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        if abs(self.w0) < 1e-300:
            raise InvalidParameterError("seed pair has zero Wronskian (not independent)")

    @property
    def w0(self) -> float:
        """Wronskian of the pair, evaluated at t = 0."""
        return self.u1(0.0) * self.du2(0.0) - self.du1(0.0) * self.u2(0.0)

    @property
    def mu3(self) -> float:
        """Third mixing coefficient from the constraint (record only)."""
        w0 = self.w0
        return (self.mu2 * self.mu2 + 4.0 * self.lam * self.lam / (w0 * w0)) / (4.0 * self.mu1)

    def wronskian(self, t: float) -> float:
        """Wronskian at an arbitrary time (constant up to rounding)."""
        tau = t + self.shift
        return self.u1(tau) * self.du2(tau) - self.du1(tau) * self.u2(tau)

    def u_value(self, t: float) -> complex:
        tau = t + self.shift
        mix = complex(self.mu2 / 2.0, -self.lam / self.w0)
        return self.mu1 * self.u1(tau) + mix * self.u2(tau)

    def u_derivative(self, t: float) -> complex:
        tau = t + self.shift
        mix = complex(self.mu2 / 2.0, -self.lam / self.w0)
        return self.mu1 * self.du1(tau) + mix * self.du2(tau)

    @classmethod
    def hyperbolic_driving(cls, params: ModelParams) -> "SeedBasis":
        """cosh/sinh pair reproducing the tanh driving for k > -1."""
        if params.regime is Regime.TRIGONOMETRIC_OSCILLATORY:
            raise InvalidParameterError("hyperbolic seed pair requires k > -1")
        rate = regime_constant(params)
        if rate == 0.0:
            raise InvalidParameterError(
                "driving vanishes identically at k = -1; no seed construction"
            )
        return cls(
            u1=lambda t: math.cosh(rate * t),
            u2=lambda t: math.sinh(rate * t),
            du1=lambda t: rate * math.sinh(rate * t),
            du2=lambda t: rate * math.cosh(rate * t),
            mu1=math.cos(rate * params.phi),
            mu2=0.0,
            lam=-rate * math.sin(rate * params.phi),
            shift=params.theta,
        )

    @classmethod
    def trigonometric_driving(cls, params: ModelParams) -> "SeedBasis":
        """cos/sin pair reproducing the -tan driving for k < -1."""
        if params.regime is not Regime.TRIGONOMETRIC_OSCILLATORY:
            raise InvalidParameterError("trigonometric seed pair requires k < -1")
        rate = regime_constant(params)
        return cls(
            u1=lambda t: math.cos(rate * t),
            u2=lambda t: math.sin(rate * t),
            du1=lambda t: -rate * math.sin(rate * t),
            du2=lambda t: rate * math.cos(rate * t),
            mu1=math.cosh(rate * params.phi),
            mu2=0.0,
            lam=rate * math.sinh(rate * params.phi),
            shift=params.theta,
        )


def eval_f_from_seed(basis: SeedBasis, t: float) -> complex:
    """Driving value u'(t)/u(t) from a seed basis."""
    u = basis.u_value(t)
    if abs(u) < 1e-300:
        raise ZeroDivisionError(f"seed combination u(t) vanishes at t = {t:.6g}")
    return basis.u_derivative(t) / u

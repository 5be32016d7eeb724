"""Pure-Python RK4 kernel: fallback used when the compiled extension is
unavailable.  Mirrors ``_rk4.pyx`` operation for operation; the driving is
evaluated inline from the same overflow-safe half-argument formulas so the
loop never leaves this module.
"""

from __future__ import annotations

import math

BACKEND_NAME = "python"

_SATURATION = 175.0

FRAME_A = 0
FRAME_C = 1

STATUS_OK = 0
STATUS_POLE = 1
STATUS_OVERFLOW = 2


def _f_eval(k: float, theta: float, phi: float, t: float) -> complex:
    if k >= -1.0:
        c = math.sqrt(1.0 + k)
        x = c * (t + theta)
        if x > _SATURATION:
            return complex(c, 0.0)
        if x < -_SATURATION:
            return complex(-c, 0.0)
        y = c * phi
        d = math.cosh(2.0 * x) + math.cos(2.0 * y)
        if d == 0.0:
            return complex(math.inf, 0.0)
        return complex(c * math.sinh(2.0 * x) / d, c * math.sin(2.0 * y) / d)
    e = math.sqrt(-1.0 - k)
    y = e * phi
    if y > _SATURATION:
        return complex(0.0, -e)
    if y < -_SATURATION:
        return complex(0.0, e)
    x = e * (t + theta)
    d = math.cos(2.0 * x) + math.cosh(2.0 * y)
    if d == 0.0:
        return complex(math.inf, 0.0)
    return complex(-e * math.sin(2.0 * x) / d, -e * math.sinh(2.0 * y) / d)


def run_rk4(
    k: float,
    theta: float,
    phi: float,
    frame: int,
    a1_0: complex,
    a2_0: complex,
    t0: float,
    dt: float,
    n_steps: int,
    magnitude_cap: float,
    out1,
    out2,
) -> tuple[int, int]:
    """Classic fixed-step RK4 over n_steps; fills out1/out2 (length n_steps+1).

    Returns (status, n_valid): entries 0..n_valid are valid.  Driving is
    evaluated analytically at t, t+dt/2 and t+dt of every step; a stage
    driving beyond the cap aborts with STATUS_POLE, an amplitude beyond it
    with STATUS_OVERFLOW.
    """
    y1 = complex(a1_0)
    y2 = complex(a2_0)
    out1[0] = y1
    out2[0] = y2
    half = 0.5 * dt
    sixth = dt / 6.0
    c_frame = frame == FRAME_C
    for i in range(n_steps):
        t = t0 + i * dt
        f1 = _f_eval(k, theta, phi, t)
        f2 = _f_eval(k, theta, phi, t + half)
        f3 = _f_eval(k, theta, phi, t0 + (i + 1) * dt)
        for f in (f1, f2, f3):
            m = math.hypot(f.real, f.imag)
            if not math.isfinite(m) or m > magnitude_cap:
                return STATUS_POLE, i

        if c_frame:
            d1 = -1j * y1 + f1 * y2
            d2 = f1 * y1 + 1j * y2
            u1 = y1 + half * d1
            u2 = y2 + half * d2
            e1 = -1j * u1 + f2 * u2
            e2 = f2 * u1 + 1j * u2
            v1 = y1 + half * e1
            v2 = y2 + half * e2
            g1 = -1j * v1 + f2 * v2
            g2 = f2 * v1 + 1j * v2
            w1 = y1 + dt * g1
            w2 = y2 + dt * g2
            h1 = -1j * w1 + f3 * w2
            h2 = f3 * w1 + 1j * w2
        else:
            d1 = f1 * y1 + 1j * y2
            d2 = 1j * y1 - f1 * y2
            u1 = y1 + half * d1
            u2 = y2 + half * d2
            e1 = f2 * u1 + 1j * u2
            e2 = 1j * u1 - f2 * u2
            v1 = y1 + half * e1
            v2 = y2 + half * e2
            g1 = f2 * v1 + 1j * v2
            g2 = 1j * v1 - f2 * v2
            w1 = y1 + dt * g1
            w2 = y2 + dt * g2
            h1 = f3 * w1 + 1j * w2
            h2 = 1j * w1 - f3 * w2

        y1 = y1 + sixth * (d1 + 2.0 * e1 + 2.0 * g1 + h1)
        y2 = y2 + sixth * (d2 + 2.0 * e2 + 2.0 * g2 + h2)

        m1 = math.hypot(y1.real, y1.imag)
        m2 = math.hypot(y2.real, y2.imag)
        if not (math.isfinite(m1) and math.isfinite(m2)) or m1 > magnitude_cap or m2 > magnitude_cap:
            return STATUS_OVERFLOW, i
        out1[i + 1] = y1
        out2[i + 1] = y2
    return STATUS_OK, n_steps

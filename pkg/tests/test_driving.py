"""Driving function: frozen multiprecision anchors, pole handling, the
seed-based construction, and the algebraic identities (Riccati, partner
potentials, antisymmetry under x -> -x)."""

import cmath
import math

import numpy as np
import pytest

from susy_qubit import (
    InvalidParameterError,
    ModelParams,
    PoleProximityError,
    SeedBasis,
    eval_f,
    eval_f_deriv,
    eval_f_from_seed,
    eval_f_grid,
    partner_potentials,
    riccati_residual,
)

# Frozen 50-digit mpmath evaluations of the closed forms (computed
# independently before this module was written).
F_AT_0_DECAYING = complex(-1.7866725343287075942, -0.14912506562343352094)
F_AT_10_TRIG = complex(0.19319815122884098655, -2.8502154175963222364)
F_AT_247_HYPERBOLIC = complex(-0.17425899278052259248, -0.27498781917504671124)
V2_K1_QUARTER = {
    0.0: complex(-3.5448229259108325811, 0.0),
    0.5: complex(-1.4608214398586658876, 1.1647333538851400221),
    1.0: complex(0.30296923300435861428, 0.51211994000885321046),
    -1.3: complex(0.69583093076345742722, -0.24339385983363751712),
}

DECAYING = ModelParams(k=1.566, theta=-0.83, phi=3.14)
HYPERBOLIC = ModelParams(k=-0.49, theta=-25.0, phi=-0.54)
TRIGONOMETRIC = ModelParams(k=-5.8, theta=-25.0, phi=0.455)


def test_frozen_oracle_values():
    assert abs(eval_f(DECAYING, 0.0).f - F_AT_0_DECAYING) < 1e-13
    assert abs(eval_f(TRIGONOMETRIC, 10.0).f - F_AT_10_TRIG) < 1e-13
    assert abs(eval_f(HYPERBOLIC, 24.7).f - F_AT_247_HYPERBOLIC) < 1e-13


def test_driving_vanishes_at_lower_boundary():
    params = ModelParams(k=-1.0, theta=0.7, phi=-2.3)
    for t in (-5.0, 0.0, 1.3, 40.0):
        assert eval_f(params, t).f == 0.0


def test_driving_zero_at_origin():
    assert eval_f(ModelParams(k=0.0), 0.0).f == 0.0


def test_sample_split_is_consistent():
    sample = eval_f(DECAYING, 1.25)
    assert sample.f == complex(sample.f_re, sample.f_im)
    assert sample.t == 1.25
    assert sample.coupling == complex(-sample.f_im, sample.f_re)


def test_grid_matches_scalar_evaluation():
    ts = np.linspace(-8.0, 8.0, 101)
    for params in (DECAYING, HYPERBOLIC, TRIGONOMETRIC):
        values = eval_f_grid(params, ts)
        scalars = np.array([eval_f(params, float(t)).f for t in ts])
        assert np.abs(values - scalars).max() < 1e-15


def test_nonfinite_time_rejected():
    with pytest.raises(InvalidParameterError):
        eval_f(DECAYING, math.nan)


def test_pole_raises_with_default_cap():
    # phi = 0 in the trigonometric regime: a real tangent with true poles
    params = ModelParams(k=-2.0, theta=0.0, phi=0.0)
    t_pole = math.pi / 2
    with pytest.raises(PoleProximityError) as info:
        eval_f(params, t_pole)
    assert info.value.t_last == t_pole
    # a moderate distance from the pole evaluates under a generous cap
    t_near = t_pole - 1e-4
    value = eval_f(params, t_near, magnitude_cap=1e20).f
    assert abs(value) == pytest.approx(1.0 / 1e-4, rel=1e-3)
    with pytest.raises(PoleProximityError):
        eval_f(params, t_near, magnitude_cap=1e3)


def test_pole_respects_environment_cap(monkeypatch):
    params = ModelParams(k=-2.0, theta=0.0, phi=0.0)
    monkeypatch.setenv("SUSY_QUBIT_MAG_CAP", "1.0")
    with pytest.raises(PoleProximityError):
        eval_f(params, 1.0)  # |tan(1)| = 1.557 > 1
    monkeypatch.delenv("SUSY_QUBIT_MAG_CAP")
    assert abs(eval_f(params, 1.0).f) == pytest.approx(math.tan(1.0))


def test_grid_pole_reports_offending_time():
    params = ModelParams(k=-2.0, theta=0.0, phi=0.0)
    ts = np.array([0.0, 1.0, math.pi / 2, 2.0])
    with pytest.raises(PoleProximityError) as info:
        eval_f_grid(params, ts)
    assert info.value.t_last == pytest.approx(math.pi / 2)


@pytest.mark.parametrize("params", [DECAYING, HYPERBOLIC, TRIGONOMETRIC])
def test_antisymmetry_under_shifted_reflection(params):
    # f(-x) = -conj(f(x)) with x = t + theta: the real part is odd and the
    # imaginary part even in the shifted time
    xs = np.linspace(0.05, 20.0, 200)
    for x in xs:
        plus = eval_f(params, float(x - params.theta)).f
        minus = eval_f(params, float(-x - params.theta)).f
        assert abs(minus + plus.conjugate()) < 1e-12


@pytest.mark.parametrize("params", [DECAYING, HYPERBOLIC, TRIGONOMETRIC])
def test_single_formula_analytic_continuation(params):
    # -s*tan[s(t+eta)] with s = sqrt(-1-k) reproduces every branch
    s = cmath.sqrt(complex(-1.0 - params.k))
    for t in np.linspace(-10.0, 10.0, 81):
        direct = -s * cmath.tan(s * (t + params.eta))
        assert abs(direct - eval_f(params, float(t)).f) < 1e-12


def test_riccati_examples():
    assert abs(riccati_residual(ModelParams(k=3.0, theta=0.0, phi=0.2), 1.3)) <= 1e-10
    assert abs(riccati_residual(TRIGONOMETRIC, 10.0)) <= 1e-10
    assert riccati_residual(ModelParams(k=-1.0, theta=2.0, phi=0.5), 0.7) == 0.0


@pytest.mark.parametrize(
    "params",
    [DECAYING, HYPERBOLIC, TRIGONOMETRIC, ModelParams(k=0.25, theta=0.4, phi=1.1),
     ModelParams(k=-0.6, theta=-2.0, phi=0.3)],
)
def test_riccati_residual_small_everywhere(params):
    worst = max(abs(riccati_residual(params, float(t))) for t in np.linspace(-30, 30, 400))
    assert worst <= 1e-10


def test_partner_first_potential_is_exactly_constant():
    for params in (DECAYING, HYPERBOLIC, TRIGONOMETRIC):
        for t in (-3.0, 0.0, 11.7):
            v1, _ = partner_potentials(params, t)
            assert v1 == complex(params.k)


def test_partner_degenerate_at_lower_boundary():
    params = ModelParams(k=-1.0, theta=0.3, phi=0.9)
    for t in (-2.0, 0.0, 5.0):
        v1, v2 = partner_potentials(params, t)
        assert v1 == v2 == complex(-1.0)


def test_partner_frozen_complex_values():
    params = ModelParams(k=1.0, theta=0.0, phi=0.25)
    for t, expected in V2_K1_QUARTER.items():
        _, v2 = partner_potentials(params, t)
        assert abs(v2 - expected) < 1e-13
    assert abs(partner_potentials(params, 0.5)[1].imag) > 0.5  # genuinely complex


@pytest.mark.parametrize(
    "params",
    [DECAYING, HYPERBOLIC, TRIGONOMETRIC, ModelParams(k=1.0, theta=0.0, phi=0.25)],
)
def test_partner_consistency_two_routes(params):
    # closed-form v2 against v1 - 2*df/dt (independent evaluation routes)
    for t in np.linspace(-30.0, 30.0, 400):
        v1, v2 = partner_potentials(params, float(t))
        assert abs(v2 - (v1 - 2.0 * eval_f_deriv(params, float(t)))) <= 1e-10


@pytest.mark.parametrize(
    "params, ctor",
    [
        (DECAYING, SeedBasis.hyperbolic_driving),
        (HYPERBOLIC, SeedBasis.hyperbolic_driving),
        (TRIGONOMETRIC, SeedBasis.trigonometric_driving),
    ],
)
def test_seed_construction_matches_closed_form(params, ctor):
    basis = ctor(params)
    for t in np.arange(-30.0, 30.0 + 1e-9, 0.05):
        assert abs(eval_f_from_seed(basis, float(t)) - eval_f(params, float(t)).f) <= 1e-10


def test_seed_with_zero_mixing_is_real():
    params = ModelParams(k=0.5, theta=0.3, phi=0.0)  # lam = -rate*sin(0) = 0
    basis = SeedBasis.hyperbolic_driving(params)
    assert basis.lam == 0.0
    for t in np.linspace(-5.0, 5.0, 50):
        value = eval_f_from_seed(basis, float(t))
        assert value.imag == 0.0


def test_seed_mixing_constraint():
    for basis in (
        SeedBasis.hyperbolic_driving(DECAYING),
        SeedBasis.trigonometric_driving(TRIGONOMETRIC),
    ):
        lhs = basis.mu2 ** 2 - 4.0 * basis.mu1 * basis.mu3
        rhs = -4.0 * basis.lam ** 2 / basis.w0 ** 2
        assert lhs == pytest.approx(rhs, rel=1e-12)
        if basis.lam != 0.0:
            assert basis.mu1 > 0 and basis.mu3 > 0


def test_seed_wronskian_is_constant():
    # The identity is exact; numerically it is checked where cosh^2 - sinh^2
    # does not lose all precision to cancellation.
    basis = SeedBasis.hyperbolic_driving(DECAYING)
    w0 = basis.w0
    for t in np.linspace(-3.0, 3.0, 61):
        assert abs(basis.wronskian(float(t)) - w0) <= 1e-10 * abs(w0)
    basis = SeedBasis.trigonometric_driving(TRIGONOMETRIC)
    w0 = basis.w0
    for t in np.linspace(-30.0, 30.0, 121):
        assert abs(basis.wronskian(float(t)) - w0) <= 1e-10 * abs(w0)


def test_seed_rejects_nonpositive_mu1():
    # cos(rate*phi) < 0 would make u(t) vanish somewhere on the real line
    params = ModelParams(k=3.0, theta=0.0, phi=math.pi / 2)
    with pytest.raises(InvalidParameterError):
        SeedBasis.hyperbolic_driving(params)


def test_seed_rejects_vanishing_driving():
    with pytest.raises(InvalidParameterError):
        SeedBasis.hyperbolic_driving(ModelParams(k=-1.0))


def test_seed_zero_divisor():
    basis = SeedBasis(
        u1=math.sin, u2=lambda t: -math.cos(t),
        du1=math.cos, du2=math.sin,
        mu1=1.0, mu2=0.0, lam=0.0,
    )
    assert basis.w0 == pytest.approx(1.0)
    with pytest.raises(ZeroDivisionError):
        eval_f_from_seed(basis, 0.0)  # u(0) = sin(0) = 0 exactly


def test_saturated_arguments_stay_finite():
    # far from the displacement the tanh branch saturates to +-rate
    params = ModelParams(k=3.0, theta=0.0, phi=0.3)
    far = eval_f(params, 500.0)
    assert far.f == pytest.approx(2.0)
    assert eval_f(params, -500.0).f == pytest.approx(-2.0)
    assert abs(riccati_residual(params, 500.0)) <= 1e-10

"""Frame rotation, population inversion, total probability, and the
inversion-rate identity (whose proportionality factor was derived from the
equations of motion and is confirmed here by finite differences)."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from susy_qubit import (
    Frame,
    IntegratorConfig,
    ModelParams,
    SpinorState,
    analytic_trajectory,
    integrate,
    population_inversion,
    preset,
    rotate_to_a,
    rotate_to_c,
    total_probability,
    trajectory_from_amplitudes,
    wdot_identity_residual,
)

ROOT_HALF = 1.0 / math.sqrt(2.0)

_amplitudes = st.complex_numbers(
    max_magnitude=1e3, allow_nan=False, allow_infinity=False
)


def test_rotation_examples():
    state = SpinorState(0.0, 1.0 + 0j, 0j, Frame.A)
    c = rotate_to_c(state)
    assert c.amp1 == pytest.approx(ROOT_HALF)
    assert c.amp2 == pytest.approx(ROOT_HALF)

    state = SpinorState(0.0, 0j, 1.0 + 0j, Frame.A)
    c = rotate_to_c(state)
    assert c.amp1 == pytest.approx(-ROOT_HALF)
    assert c.amp2 == pytest.approx(ROOT_HALF)


def test_equal_superposition_maps_to_first_axis():
    # the oscillatory presets start from c = (1, 1)/sqrt(2), i.e. a = (1, 0)
    state = SpinorState(0.0, complex(ROOT_HALF), complex(ROOT_HALF), Frame.C)
    a = rotate_to_a(state)
    assert abs(a.amp1 - 1.0) <= 1e-15
    assert abs(a.amp2) <= 1e-15


def test_rotations_are_noops_in_their_own_frame():
    state = SpinorState(0.0, 1.0 + 2j, -0.5j, Frame.C)
    assert rotate_to_c(state) is state
    rotated = rotate_to_a(state)
    assert rotate_to_a(rotated) is rotated


@given(_amplitudes, _amplitudes)
def test_rotation_round_trip(z1, z2):
    state = SpinorState(0.0, z1, z2, Frame.C)
    back = rotate_to_c(rotate_to_a(state))
    scale = abs(z1) + abs(z2) + 1e-30
    assert abs(back.amp1 - z1) <= 1e-14 * scale
    assert abs(back.amp2 - z2) <= 1e-14 * scale
    assert back.frame is Frame.C


def test_population_inversion_examples():
    assert population_inversion(
        SpinorState(0.0, complex(ROOT_HALF), complex(ROOT_HALF), Frame.C)
    ) == pytest.approx(0.0)
    # pure ground state
    assert population_inversion(SpinorState(0.0, 0j, 1.0 + 0j, Frame.C)) == -1.0
    assert population_inversion(SpinorState(0.0, 1.0 + 0j, 0j, Frame.C)) == 1.0


def test_population_inversion_two_formulas_agree():
    # lab-frame definition vs the rotated-frame bilinear, 1e4 random pairs
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        a1 = complex(rng.normal(), rng.normal())
        a2 = complex(rng.normal(), rng.normal())
        state_a = SpinorState(0.0, a1, a2, Frame.A)
        w_direct = population_inversion(state_a)
        w_rotated = population_inversion(rotate_to_c(state_a))
        p = total_probability(state_a)
        assert abs(w_direct - w_rotated) <= 1e-14 * (1.0 + p)


@given(_amplitudes, _amplitudes)
def test_total_probability_frame_invariant(z1, z2):
    state = SpinorState(0.0, z1, z2, Frame.A)
    p_a = total_probability(state)
    p_c = total_probability(rotate_to_c(state))
    assert abs(p_a - p_c) <= 1e-14 * (1.0 + p_a)


@given(_amplitudes, _amplitudes)
def test_inversion_bounded_by_probability(z1, z2):
    state = SpinorState(0.0, z1, z2, Frame.A)
    w = population_inversion(state)
    p = total_probability(state)
    assert abs(w) <= p * (1.0 + 1e-12) + 1e-300


def test_normalized_state_has_unit_probability():
    state = preset("decaying").initial_state()
    assert total_probability(state) == pytest.approx(1.0, abs=1e-15)


def test_trajectory_builder_consistency():
    # builder W equals the rotated-frame bilinear on every grid point
    traj = analytic_trajectory(
        preset("hyperbolic").params,
        SpinorState(0.0, 1.0 + 0j, 0j, Frame.A),
        np.linspace(0.0, 30.0, 1501),
    )
    bilinear = -2.0 * (traj.a1 * np.conj(traj.a2)).real
    assert np.abs(traj.w - bilinear).max() <= 1e-14 * (1.0 + np.abs(traj.p).max())
    assert np.abs(traj.p - (np.abs(traj.a1) ** 2 + np.abs(traj.a2) ** 2)).max() <= 1e-14 * (
        1.0 + np.abs(traj.p).max()
    )


def test_nondriven_inversion_identically_zero():
    # k = -1 from (1, 0): a1 stays real, a2 stays imaginary, so W == 0
    params = ModelParams(k=-1.0)
    state = SpinorState(0.0, 1.0 + 0j, 0j, Frame.A)
    grid = np.arange(0.0, 6.0, 1e-2)
    exact = analytic_trajectory(params, state, grid)
    assert np.all(exact.w == 0.0)
    numeric = integrate(params, state, IntegratorConfig(dt=1e-2, t_max=6.0))
    assert np.all(numeric.w == 0.0)


def test_real_driving_conserves_inversion():
    # phi = 0 keeps the driving real; W is a constant of motion
    params = ModelParams(k=-0.3, theta=0.4, phi=0.0)
    state = SpinorState(0.0, 0.8 + 0.1j, 0.3 - 0.2j, Frame.A)
    numeric = integrate(params, state, IntegratorConfig(dt=1e-3, t_max=20.0))
    assert np.abs(numeric.w - numeric.w[0]).max() <= 1e-10
    exact = analytic_trajectory(params, state, numeric.grid)
    assert np.abs(exact.w - exact.w[0]).max() <= 1e-10
    assert abs(exact.w[0]) > 0.1  # the conserved value is not trivially zero


def test_wdot_identity_factor_and_scaling():
    # dW/dt = 4*Im(f)*Im(a1*conj(a2)): the finite-difference residual drops
    # by ~100x when dt drops 10x, pinning the factor (a wrong constant
    # would leave an O(1) residual at every dt)
    scenario = preset("trigonometric")
    worst = {}
    for dt in (1e-3, 1e-4):
        grid = np.arange(0.0, 2.0 + dt / 2, dt)
        traj = analytic_trajectory(scenario.params, scenario.initial_state(), grid)
        worst[dt] = max(
            wdot_identity_residual(traj, i) for i in range(1, len(traj) - 1, 7)
        )
    assert worst[1e-3] <= 1e-4
    assert worst[1e-4] <= 1e-6
    assert worst[1e-4] <= worst[1e-3]


def test_wdot_identity_on_preset_grids():
    # dt-scaled contract on the default windows
    for name in ("decaying", "hyperbolic", "trigonometric"):
        scenario = preset(name)
        dt = 1e-3
        grid = np.arange(scenario.t_min, scenario.t_max + dt / 2, dt)
        traj = analytic_trajectory(scenario.params, scenario.initial_state(), grid)
        tolerance = 1e-6 * (1.0 + np.abs(traj.w)) / dt
        for i in range(1, len(traj) - 1, 13):
            assert wdot_identity_residual(traj, i) <= tolerance[i]


def test_wdot_identity_boundary_index():
    scenario = preset("decaying")
    grid = np.arange(0.0, 1.0, 1e-2)
    traj = analytic_trajectory(scenario.params, scenario.initial_state(), grid)
    with pytest.raises(IndexError):
        wdot_identity_residual(traj, 0)
    with pytest.raises(IndexError):
        wdot_identity_residual(traj, len(traj) - 1)


def test_builder_accepts_lab_frame_arrays():
    grid = np.linspace(0.0, 1.0, 11)
    c1 = np.full(11, ROOT_HALF, dtype=complex)
    c2 = np.full(11, ROOT_HALF, dtype=complex)
    traj = trajectory_from_amplitudes(
        ModelParams(k=-1.0), grid, c1, c2, Frame.C, method="analytic"
    )
    assert np.abs(traj.a1 - 1.0).max() <= 1e-15
    assert np.abs(traj.a2).max() <= 1e-15
    assert np.abs(traj.w).max() <= 1e-15
    assert np.abs(traj.p - 1.0).max() <= 1e-15

import cmath
import math

import numpy as np
import pytest
import scipy.integrate
import scipy.linalg
from hypothesis import given, settings, strategies as st

from ramangate.dynamics import (
    Trajectory,
    analytic_detuned,
    analytic_no_stark,
    analytic_resonant,
    evolve_exact,
    evolve_ode,
    evolve_with_decay,
    propagator,
    sample_exact,
    time_grid,
)
from ramangate.errors import ContractError, IntegrationError
from ramangate.hilbert import OperatorMatrix, label, make_basis_state
from ramangate.gates import qpg_detuning_for, qpg_gate_time
from ramangate.models import ManifoldSpec, SystemParams, amplitude_generator, full_rotated_hamiltonian


def test_propagator_matches_expm(spec, rng):
    p = SystemParams(phi1=0.3, delta1=7.0, delta2=6.5, g2_mag=1.2)
    h = full_rotated_hamiltonian(p, spec)
    for t in rng.uniform(0, 30, size=5):
        ref = scipy.linalg.expm(-1j * t * h.entries)
        np.testing.assert_allclose(propagator(h, t), ref, atol=1e-11)


def test_non_hermitian_path():
    h = OperatorMatrix(np.array([[0, 1], [1, -1j]], dtype=complex))
    ref = scipy.linalg.expm(-1j * 2.0 * h.entries)
    np.testing.assert_allclose(propagator(h, 2.0), ref, atol=1e-14)


def test_zero_time_is_identity(spec):
    h = full_rotated_hamiltonian(SystemParams(), spec)
    psi = make_basis_state(spec, label("g", 1, 0))
    assert evolve_exact(h, psi, 0.0) is psi
    np.testing.assert_array_equal(propagator(h, 0.0), np.eye(spec.dim))


def test_sample_exact_norm(spec):
    h = full_rotated_hamiltonian(SystemParams(delta1=10.0, delta2=9.8), spec)
    traj = sample_exact(h, make_basis_state(spec, label("g", 1, 0)), time_grid(100.0))
    assert traj.states.shape == (400, spec.dim)
    assert traj.norm_drift() <= 1e-9


def test_trajectory_validation():
    with pytest.raises(ContractError):
        Trajectory(np.array([0.0, 0.0]), np.zeros((2, 1)), "x")
    with pytest.raises(ContractError):
        Trajectory(np.array([0.0, 1.0]), np.zeros((3, 1)), "x")
    with pytest.raises(ContractError):
        time_grid(1.0, 1)


def test_ode_matches_exact_exponential():
    p = SystemParams(phi1=0.5, delta1=10.0, delta2=9.8)
    m = ManifoldSpec(2, 1)
    ts = time_grid(60.0, 50)
    traj = evolve_ode("full_manifold", p, m, [1, 0, 0], ts)
    k = amplitude_generator(p, m)
    ref = np.array([scipy.linalg.expm(-1j * k * t)[:, 0] for t in ts])
    np.testing.assert_allclose(traj.states, ref, atol=1e-8)
    assert traj.norm_drift() <= 1e-9


def test_ode_contract_errors():
    p = SystemParams()
    with pytest.raises(ContractError):
        evolve_ode("adiabatic", p, ManifoldSpec(), [1, 0], [0, 1], rtol=1e-15)
    with pytest.raises(ContractError):
        evolve_ode("adiabatic", p, ManifoldSpec(), [1, 0, 0], [0, 1])
    with pytest.raises(ContractError):
        evolve_ode("nope", p, ManifoldSpec(), [1, 0], [0, 1])


def test_integration_failure_reports_time(monkeypatch):
    class Failed:
        status, message, t = -1, "step size underflow", np.array([0.0, 0.25])

    monkeypatch.setattr(scipy.integrate, "solve_ivp", lambda *a, **k: Failed())
    with pytest.raises(IntegrationError) as err:
        evolve_ode("adiabatic", SystemParams(), ManifoldSpec(), [1, 0], [0.0, 1.0])
    assert err.value.t_fail == 0.25


@settings(max_examples=15, deadline=None)
@given(st.floats(8, 40), st.floats(-0.5, 0.5), st.floats(0, 2 * np.pi),
       st.complex_numbers(max_magnitude=1), st.complex_numbers(max_magnitude=1))
def test_detuned_closed_form_solves_adiabatic_equations(d1, det, phi, a0, b0):
    p = SystemParams(delta1=d1, delta2=d1 - det, phi1=phi)
    ts = time_grid(40.0, 20)
    traj = evolve_ode("adiabatic", p, ManifoldSpec(), [a0, b0], ts)
    closed = np.array([analytic_detuned(p, a0, b0, t) for t in ts])
    np.testing.assert_allclose(traj.states, closed, atol=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.floats(5, 50), st.floats(0, 100), st.floats(0, 2 * np.pi))
def test_detuned_reduces_to_resonant(d1, t, phi):
    p = SystemParams(delta1=d1, delta2=d1, phi1=phi)
    a = analytic_detuned(p, 0.6, 0.8j, t)
    b = analytic_resonant(p, 0.6, 0.8j, t)
    assert max(abs(x - y) for x, y in zip(a, b)) <= 1e-12


def test_resonant_half_area_value():
    p = SystemParams(delta1=10.0, delta2=10.0)
    t = (math.pi / 2) * 10.0 / 2.0  # theta = pi/2
    _, d3 = analytic_resonant(p, 0.0, 1.0, t)
    assert abs(d3 - cmath.exp(1j * math.pi / 4) / math.sqrt(2)) <= 1e-12


def test_no_stark_rabi():
    p = SystemParams(delta1=10.0, delta2=10.0)
    d1, d3 = analytic_no_stark(p, 1.0, 0.0, math.pi * 10.0 / 2)  # g^2 t / delta = pi/2
    assert abs(d1) <= 1e-12 and abs(d3 - 1j) <= 1e-12
    with pytest.raises(ContractError):
        analytic_no_stark(p.replace(delta2=9.0), 1.0, 0.0, 1.0)


def test_closed_forms_need_unit_manifold_and_equal_couplings():
    p = SystemParams(delta1=10.0, delta2=9.8)
    with pytest.raises(ContractError):
        analytic_detuned(p, 1, 0, 1.0, ManifoldSpec(2, 0))
    with pytest.raises(ContractError):
        analytic_detuned(p.replace(g2_mag=2.0), 1, 0, 1.0)


def test_decay_survival(spec):
    p = SystemParams(delta1=10.0, delta2=qpg_detuning_for(10.0), kappa=0.01)
    t = qpg_gate_time(10.0)
    psi, surv = evolve_with_decay(p, spec, make_basis_state(spec, label("f", 0, 1)), t)
    assert surv == pytest.approx(math.exp(-0.01 * t), abs=0.05)
    assert psi.norm() ** 2 == pytest.approx(surv)
    # no loss without kappa
    _, one = evolve_with_decay(p.replace(kappa=0.0), spec, make_basis_state(spec, label("f", 0, 1)), t)
    assert one == pytest.approx(1.0, abs=1e-12)

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramangate.errors import AdiabaticValidityWarning, ContractError, SingularParameterError
from ramangate.hilbert import HilbertSpec, atom_transition_matrix, basis_index, label
from ramangate.models import (
    QUBIT_LABELS,
    ManifoldSpec,
    SystemParams,
    amplitude_generator,
    check_adiabatic,
    derived_rates,
    effective_hamiltonian,
    excitation_number,
    exchange_operator,
    full_rotated_hamiltonian,
    spin_dot,
    spin_form_hamiltonian,
)

params_st = st.builds(
    SystemParams,
    g1_mag=st.floats(0.5, 2.0),
    g2_mag=st.floats(0.5, 2.0),
    phi1=st.floats(0, 2 * np.pi),
    phi2=st.floats(0, 2 * np.pi),
    delta1=st.floats(5.0, 50.0),
    delta2=st.floats(4.0, 50.0),
)


def full_h_by_hand(p, spec):
    """Rotated-frame Hamiltonian assembled element by element."""
    h = np.zeros((spec.dim, spec.dim), dtype=complex)
    idx = {str(lab): basis_index(spec, lab) for lab in spec.labels()}
    for lab in spec.labels():
        i = idx[str(lab)]
        if lab.atom.name == "e":
            h[i, i] = p.delta1
        if lab.atom.name == "f":
            h[i, i] = p.delta1 - p.delta2
        if lab.atom.name == "g" and lab.n_a > 0:
            # g1 |e><g| a : |g, n_a, n_b> -> sqrt(n_a) |e, n_a-1, n_b>
            j = idx[f"e{lab.n_a - 1}{lab.n_b}"]
            h[j, i] += p.g1 * math.sqrt(lab.n_a)
            h[i, j] += np.conj(p.g1) * math.sqrt(lab.n_a)
        if lab.atom.name == "f" and lab.n_b > 0:
            j = idx[f"e{lab.n_a}{lab.n_b - 1}"]
            h[j, i] += p.g2 * math.sqrt(lab.n_b)
            h[i, j] += np.conj(p.g2) * math.sqrt(lab.n_b)
    return h


@settings(max_examples=30, deadline=None)
@given(params_st)
def test_full_hamiltonian_matches_hand_assembly(p):
    spec = HilbertSpec()
    h = full_rotated_hamiltonian(p, spec).entries
    np.testing.assert_allclose(h, full_h_by_hand(p, spec), atol=1e-14)
    assert np.max(np.abs(h - h.conj().T)) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(params_st)
def test_excitation_conserved(p):
    spec = HilbertSpec()
    h = full_rotated_hamiltonian(p, spec).entries
    n = excitation_number(spec).entries
    assert np.max(np.abs(h @ n - n @ h)) <= 1e-12


def test_counting_f_as_excitation_is_not_conserved(spec):
    # the Raman step |g,1,0> -> |f,0,1> keeps one photon and moves the atom to |f>
    p = SystemParams()
    h = full_rotated_hamiltonian(p, spec).entries
    n = excitation_number(spec).entries + atom_transition_matrix(spec, "f", "f").entries
    assert np.max(np.abs(h @ n - n @ h)) > 0.5


@pytest.mark.parametrize("n, mu", [(1, 0), (1, 1), (2, 0), (2, 1)])
def test_manifold_restriction(n, mu, spec):
    p = SystemParams(phi1=0.4, phi2=-1.1, g2_mag=1.3, delta1=12.0, delta2=11.5)
    idx = [basis_index(spec, lab) for lab in ManifoldSpec(n, mu).labels()]
    block = full_rotated_hamiltonian(p, spec).entries[np.ix_(idx, idx)]
    # i d1' = g1* sqrt(n) d2 ; i d2' = D1 d2 + g1 sqrt(n) d1 + g2 sqrt(mu+1) d3 ;
    # i d3' = (D1 - D2) d3 + g2* sqrt(mu+1) d2
    sn, sm = math.sqrt(n), math.sqrt(mu + 1)
    k = np.array([
        [0, np.conj(p.g1) * sn, 0],
        [p.g1 * sn, p.delta1, p.g2 * sm],
        [0, np.conj(p.g2) * sm, p.delta1 - p.delta2],
    ])
    np.testing.assert_allclose(block, k, atol=1e-12)
    np.testing.assert_allclose(amplitude_generator(p, ManifoldSpec(n, mu)), k, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(params_st)
def test_effective_equals_second_order_elimination(p):
    """P H P - P H Q (Q H Q)^-1 Q H P with Q the |e> block."""
    spec = HilbertSpec()
    h = full_rotated_hamiltonian(p, spec).entries
    q = [basis_index(spec, lab) for lab in spec.labels() if lab.atom.name == "e"]
    pp = [i for i in range(spec.dim) if i not in q]
    hqq = h[np.ix_(q, q)]
    h_pp = h[np.ix_(pp, pp)] - h[np.ix_(pp, q)] @ np.linalg.solve(hqq, h[np.ix_(q, pp)])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AdiabaticValidityWarning)
        eff = effective_hamiltonian(p, spec).entries
    np.testing.assert_allclose(eff[np.ix_(pp, pp)], h_pp, atol=1e-12)
    assert not np.any(eff[np.ix_(q, q)])


def test_raman_coupling_sign_and_phase(spec):
    p = SystemParams(phi1=0.7, phi2=0.2, delta1=10.0, delta2=10.0)
    eff = effective_hamiltonian(p, spec).entries
    i, j = basis_index(spec, label("g", 1, 0)), basis_index(spec, label("f", 0, 1))
    assert eff[i, j] == pytest.approx(-np.exp(-0.5j) / 10.0, abs=1e-15)
    assert eff[i, i] == pytest.approx(-0.1)
    assert eff[j, j] == pytest.approx(-0.1)


def test_no_stark_needs_resonance(spec, qpg_params):
    with pytest.raises(ContractError):
        effective_hamiltonian(qpg_params, spec, include_stark=False)
    eff = effective_hamiltonian(qpg_params.replace(delta2=10.0), spec, include_stark=False)
    assert np.count_nonzero(np.abs(eff.entries) > 0) == 2 * 4  # Raman pairs only


@settings(max_examples=25, deadline=None)
@given(st.floats(5, 50), st.floats(-0.5, 0.5), st.floats(0, 2 * np.pi))
def test_spin_form_equals_effective(d1, det, phi):
    p = SystemParams(delta1=d1, delta2=d1 - det, phi1=phi)
    spec = HilbertSpec()
    idx = [basis_index(spec, lab) for lab in QUBIT_LABELS]
    eff = effective_hamiltonian(p, spec).entries[np.ix_(idx, idx)]
    np.testing.assert_allclose(spin_form_hamiltonian(p).entries, eff, atol=1e-12)


def test_dot_product_form_is_phase_pi_exchange():
    p = SystemParams(delta1=10.0, delta2=10.0, phi2=np.pi)
    a = spin_form_hamiltonian(p, "dot_product").entries
    b = spin_form_hamiltonian(p, "exchange").entries
    np.testing.assert_allclose(a, b, atol=1e-14)
    with pytest.raises(ContractError):
        spin_form_hamiltonian(SystemParams(delta1=10.0, delta2=10.0), "dot_product")
    with pytest.raises(ContractError):
        spin_form_hamiltonian(p.replace(delta2=9.0), "dot_product")


def test_spin_algebra():
    s_r = spin_dot()
    # singlet/triplet spectrum of two spin-1/2
    np.testing.assert_allclose(np.linalg.eigvalsh(s_r), [-0.75, 0.25, 0.25, 0.25], atol=1e-14)
    m = exchange_operator(0.0)
    np.testing.assert_allclose(m, m.conj().T)


def test_params_validation():
    with pytest.raises(ContractError):
        SystemParams(g1_mag=0.0)
    with pytest.raises(ContractError):
        SystemParams(kappa=-1.0)
    with pytest.raises(ContractError):
        SystemParams(delta1=float("nan"))
    with pytest.raises(SingularParameterError):
        derived_rates(SystemParams(delta1=0.0, delta2=0.0))


def test_derived_rates():
    p = SystemParams(delta1=10.0, delta2=9.9)
    r = derived_rates(p, 3.0)
    assert r.omega_big == pytest.approx(math.sqrt(0.2 ** 2 + 0.1 ** 2))
    assert r.nu == pytest.approx(0.1)
    assert r.theta == pytest.approx(0.6)


def test_adiabatic_warning():
    with pytest.warns(AdiabaticValidityWarning):
        check_adiabatic(SystemParams(delta1=2.0, delta2=2.0))
    with pytest.warns(AdiabaticValidityWarning):
        check_adiabatic(SystemParams(delta1=10.0, delta2=8.0))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        check_adiabatic(SystemParams(delta1=10.0, delta2=9.8))

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ramangate.errors import BoundsError, ContractError
from ramangate.hilbert import (
    BasisIndex,
    HilbertSpec,
    Level,
    OperatorMatrix,
    StateVector,
    annihilation_matrix,
    atom_transition_matrix,
    basis_index,
    basis_label,
    label,
    make_basis_state,
    number_matrix,
)

specs = st.builds(
    HilbertSpec,
    n_levels=st.sampled_from([3, 4]),
    n_max_a=st.integers(0, 4),
    n_max_b=st.integers(0, 4),
)


@given(specs, st.data())
def test_index_label_bijection(spec, data):
    i = data.draw(st.integers(0, spec.dim - 1))
    assert basis_index(spec, basis_label(spec, i)) == i


@given(specs)
def test_labels_follow_index_order(spec):
    labs = list(spec.labels())
    assert len(labs) == spec.dim
    assert [basis_index(spec, lab) for lab in labs] == list(range(spec.dim))


def test_documented_examples(spec):
    assert spec.dim == 27
    assert basis_index(spec, label("g", 0, 0)) == 0
    assert basis_index(spec, label("g", 0, 1)) == 1
    assert basis_index(spec, label("e", 0, 0)) == 9
    assert basis_index(spec, label("f", 2, 2)) == 26
    assert HilbertSpec(n_levels=4).dim == 36


@pytest.mark.parametrize(
    "lab, field",
    [(label("g", 3, 0), "n_a"), (label("f", 0, -1), "n_b"), (label("k", 0, 0), "atom")],
)
def test_out_of_range_names_field(spec, lab, field):
    with pytest.raises(BoundsError) as err:
        basis_index(spec, lab)
    assert err.value.field == field


def test_label_round_trip():
    lab = BasisIndex.parse("f01")
    assert lab == label(Level.f, 0, 1)
    assert str(lab) == "f01"
    with pytest.raises(ContractError):
        label("x", 0, 0)


def test_annihilator_matrix_elements(spec):
    a = annihilation_matrix(spec, "a").entries
    b = annihilation_matrix(spec, "b").entries
    for lab in spec.labels():
        j = basis_index(spec, lab)
        if lab.n_a > 0:
            i = basis_index(spec, label(lab.atom, lab.n_a - 1, lab.n_b))
            assert a[i, j] == pytest.approx(np.sqrt(lab.n_a))
        if lab.n_b > 0:
            i = basis_index(spec, label(lab.atom, lab.n_a, lab.n_b - 1))
            assert b[i, j] == pytest.approx(np.sqrt(lab.n_b))
    assert np.count_nonzero(a) == 3 * 3 * 2


def test_commutators(spec):
    a = annihilation_matrix(spec, "a").entries
    b = annihilation_matrix(spec, "b").entries
    assert np.max(np.abs(a @ b - b @ a)) == 0
    comm = a @ a.conj().T - a.conj().T @ a
    # canonical below the cutoff; the top Fock state carries the truncation defect
    below = [basis_index(spec, lab) for lab in spec.labels() if lab.n_a < spec.n_max_a]
    np.testing.assert_allclose(comm[np.ix_(below, below)], np.eye(len(below)), atol=1e-14)
    n_a = number_matrix(spec, "a").entries
    np.testing.assert_allclose(np.diag(n_a).real, [lab.n_a for lab in spec.labels()])


def test_atom_transitions(spec):
    s = atom_transition_matrix(spec, "e", "g").entries
    psi = s @ make_basis_state(spec, label("g", 1, 0)).amplitudes
    assert psi[basis_index(spec, label("e", 1, 0))] == 1
    assert np.linalg.norm(psi) == 1
    with pytest.raises(ContractError):
        atom_transition_matrix(spec, "k", "g")


def test_operator_matrix_hermitian_flag():
    m = np.array([[0, 1], [0, 0]], dtype=complex)
    with pytest.raises(ContractError):
        OperatorMatrix(m, hermitian=True)
    op = OperatorMatrix(m)
    assert op.dag().entries[1, 0] == 1
    assert (op @ op.dag()).entries[0, 0] == 1


def test_state_vector_read_only(spec):
    psi = make_basis_state(spec, label("f", 0, 1))
    assert psi.norm() == 1
    assert psi.amplitude(label("f", 0, 1)) == 1
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 1
    with pytest.raises(ContractError):
        StateVector(np.zeros(3), spec)

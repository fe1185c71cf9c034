import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabrec.circuits import (
    PostselectedCircuit,
    clifford_equivalent,
    outcome_probability,
    output_state,
    proportional_phase,
    strictly_equivalent,
)
from stabrec.clifford import TWO_QUBIT_TOKENS, from_word, gate, matrix_of
from stabrec.errors import ArityMismatchError, InvalidStateError, ZeroProbabilityError
from stabrec.pauli import pure_density


def dense_output(u, bit, rho):
    # oracle: evolve, project qubit 2 onto |bit>, trace it out
    proj = np.kron(np.eye(2), np.diag([1.0 - bit, float(bit)]))
    full = proj @ u @ rho @ u.conj().T @ proj
    reduced = np.einsum("ajbj->ab", full.reshape(2, 2, 2, 2))
    q = np.real(np.trace(reduced))
    return q, reduced / q


def random_state4(rng):
    v = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = v @ v.conj().T
    return rho / np.trace(rho)


H0 = pure_density([math.cos(math.pi / 8), math.sin(math.pi / 8)])


def test_cnot_on_magic_pair():
    rho = np.kron(H0, H0)
    assert outcome_probability(PostselectedCircuit.from_word("CNOT", 0), rho) == pytest.approx(0.75, abs=1e-12)
    assert outcome_probability(PostselectedCircuit.from_word("CNOT", 1), rho) == pytest.approx(0.25, abs=1e-12)


def test_identity_returns_first_input():
    phi = pure_density([0.6, 0.8j])
    out = output_state(PostselectedCircuit.from_word("", 0), np.kron(phi, pure_density([1, 1])))
    assert out.probability == pytest.approx(0.5)
    assert np.allclose(out.state, phi)


def test_zero_probability_branch():
    rho = np.kron(pure_density([1, 0]), pure_density([1, 0]))
    with pytest.raises(ZeroProbabilityError):
        output_state(PostselectedCircuit.from_word("", 1), rho)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(TWO_QUBIT_TOKENS), max_size=10), st.integers(0, 1), st.integers(0, 2**32 - 1))
def test_output_matches_dense_oracle(word, bit, seed):
    rng = np.random.default_rng(seed)
    pc = PostselectedCircuit.from_word(word, bit)
    rho = random_state4(rng)
    q_ref, state_ref = dense_output(matrix_of(pc.clifford), bit, rho)
    assert outcome_probability(pc, rho) == pytest.approx(q_ref, abs=1e-12)
    if q_ref > 1e-9:
        assert np.allclose(output_state(pc, rho).state, state_ref, atol=1e-10)


def test_kraus_is_coisometry(c2, rng):
    for i in rng.integers(len(c2), size=30):
        for b in (0, 1):
            k = PostselectedCircuit(c2[int(i)], b).kraus
            assert np.allclose(k @ k.conj().T, np.eye(2))


def test_strict_equivalence_examples():
    a = PostselectedCircuit.from_word("CNOT", 0)
    assert strictly_equivalent(a, PostselectedCircuit.from_word("CNOT Z2", 0))
    assert strictly_equivalent(a, PostselectedCircuit.from_word("CNOT Z1 Z1", 0))
    assert not strictly_equivalent(a, PostselectedCircuit.from_word("CNOT X1", 0))
    assert not strictly_equivalent(a, PostselectedCircuit.from_word("CNOT", 1))


def test_clifford_equivalence_finds_residual():
    a = PostselectedCircuit.from_word("CNOT H1", 0)
    b = PostselectedCircuit.from_word("CNOT", 0)
    g = clifford_equivalent(a, b)
    assert g == gate("H")
    assert clifford_equivalent(b, PostselectedCircuit.from_word("SWAP", 0)) is None


def test_proportional_phase():
    m = np.array([[1, 2j], [0, 1]])
    assert proportional_phase(1j * m, m) == pytest.approx(1j)
    assert proportional_phase(2 * m, m) is None


def test_validation():
    with pytest.raises(ValueError):
        PostselectedCircuit(from_word([]), 2)
    with pytest.raises(ArityMismatchError):
        PostselectedCircuit(gate("H"), 0)
    with pytest.raises(InvalidStateError):
        outcome_probability(PostselectedCircuit.from_word("", 0), np.eye(2))

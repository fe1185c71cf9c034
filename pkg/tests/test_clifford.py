import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dense_equal_up_to_phase
from stabrec.clifford import (
    GATE_MATRICES,
    TWO_QUBIT_TOKENS,
    compose,
    conjugate,
    from_word,
    gate,
    identity,
    invert,
    lift,
    match_single_clifford,
    matrix_of,
    tensor,
)
from stabrec.errors import ArityMismatchError
from stabrec.pauli import Pauli, all_paulis, sigma

words = st.lists(st.sampled_from(TWO_QUBIT_TOKENS), max_size=12)


def test_group_orders(c1, c2):
    assert len(c1) == 24
    assert len(c2) == 11520


def test_hadamard_and_phase_tableaux():
    h, p = gate("H"), gate("P")
    assert conjugate(h, Pauli.parse("X")) == Pauli.parse("Z")
    assert conjugate(h, Pauli.parse("Y")) == Pauli.parse("-Y")
    assert conjugate(p, Pauli.parse("X")) == Pauli.parse("Y")
    assert conjugate(p, Pauli.parse("Y")) == Pauli.parse("-X")


def test_cnot_tableau():
    cx = gate("CNOT")
    assert conjugate(cx, Pauli.parse("XI")) == Pauli.parse("XX")
    assert conjugate(cx, Pauli.parse("IZ")) == Pauli.parse("ZZ")
    assert conjugate(cx, Pauli.parse("ZI")) == Pauli.parse("ZI")
    assert conjugate(cx, Pauli.parse("IX")) == Pauli.parse("IX")
    assert conjugate(cx, Pauli.parse("YZ")) == Pauli.parse("+XY")


def test_tableau_matches_dense_conjugation(c2, rng):
    for i in rng.integers(len(c2), size=40):
        c = c2[int(i)]
        u = matrix_of(c)
        for p in all_paulis(2):
            assert np.allclose(u @ p.matrix() @ u.conj().T, conjugate(c, p).matrix())


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_compose_matches_matrix_product(wa, wb):
    a, b = from_word(wa), from_word(wb)
    assert dense_equal_up_to_phase(matrix_of(compose(a, b)), matrix_of(b) @ matrix_of(a))
    assert (a @ b) == compose(b, a)


@settings(max_examples=60, deadline=None)
@given(words)
def test_invert(w):
    c = from_word(w)
    assert compose(c, invert(c)) == identity(2)
    assert compose(invert(c), c) == identity(2)
    assert from_word(invert(c).word) == invert(c)


def test_group_closed_and_distinct(c2, rng):
    assert len(set(c2)) == 11520
    for _ in range(50):
        a, b = (c2[int(i)] for i in rng.integers(len(c2), size=2))
        assert c2.ordinal(compose(a, b)) >= 0


def test_word_round_trip(c2, rng):
    for i in rng.integers(len(c2), size=100):
        c = c2[int(i)]
        assert from_word(c.word) == c


def test_phase_squares():
    assert from_word(("P", "P"), 1) == gate("Z")
    assert from_word(("H", "H"), 1) == identity(1)
    assert from_word(["CNOT", "CNOT"]) == identity(2)
    assert from_word(["CNOT", "H1", "H2", "CNOT", "H1", "H2", "CNOT"]) == gate("SWAP")


def test_lift_and_tensor():
    g = tensor(gate("H"), gate("P"))
    assert g == from_word(["H1", "P2"])
    assert np.allclose(matrix_of(g), np.kron(GATE_MATRICES["H"], GATE_MATRICES["P"]))
    assert lift(gate("X"), 2) == gate("X2")
    with pytest.raises(ArityMismatchError):
        lift(gate("CNOT"), 1)
    with pytest.raises(ValueError):
        lift(gate("H"), 3)


def test_arity_errors():
    with pytest.raises(ArityMismatchError):
        compose(gate("H"), gate("CNOT"))
    with pytest.raises(ArityMismatchError):
        conjugate(gate("H"), sigma(1, 1))
    with pytest.raises(ValueError):
        gate("T")


def test_match_single_clifford(c1):
    for c in c1:
        m = np.exp(0.7j) * matrix_of(c)
        assert match_single_clifford(m) == c
    t = np.diag([1, np.exp(1j * np.pi / 4)])
    assert match_single_clifford(t) is None


def test_canonical_representative(c1):
    assert c1.canonical(from_word(("P", "P", "P", "P"), 1)) == identity(1)
    assert c1.canonical(gate("Z")).word == c1[c1.ordinal(gate("Z"))].word


def test_listing(c1):
    rows = c1.listing()
    assert len(rows) == 24
    assert rows[0][0] == 0 and rows[0][1] == "I"

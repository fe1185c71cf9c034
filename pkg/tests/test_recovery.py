import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabrec import verify
from stabrec.circuits import PostselectedCircuit, outcome_probability, strictly_equivalent
from stabrec.classify import FormKind, class_representatives, is_interacting
from stabrec.errors import InvalidStateError, NotInteractingError, ZeroProbabilityError
from stabrec.pauli import density_of, pure_density, sigma
from stabrec.recovery import (
    GENERIC_PHI,
    GENERIC_PSI,
    distinctness_table,
    minimum_signed_gap,
    recover,
    recovery_candidates,
    recovery_probability,
    recovery_rate,
    resource_z,
    synthesize_recovery,
    verify_uniqueness,
)

TABLE_V = {
    ("11", 1): 0.5841, ("12", 1): 0.7338, ("13", 1): 0.8957,
    ("21", 1): 0.7252, ("22", 1): 0.8296, ("23", 1): 0.9354,
    ("31", 1): 0.8678, ("32", 1): 0.9205, ("33", 1): 0.9708,
    ("11", -1): 0.0463, ("12", -1): -0.2183, ("13", -1): -0.6260,
    ("21", -1): 0.2879, ("22", -1): 0.0280, ("23", -1): -0.4501,
    ("31", -1): 0.6055, ("32", -1): 0.4083, ("33", -1): -0.0792,
}


@pytest.fixture(scope="module")
def reps():
    return class_representatives(FormKind.INTERACTING)


def test_cnot_recovery():
    pc = PostselectedCircuit.from_word("CNOT", 0)
    spec = synthesize_recovery(pc)
    assert spec.circuit.bit == 0
    assert strictly_equivalent(spec.circuit, pc)
    phi = pure_density([0.8, 0.6j])
    psi = pure_density([math.cos(0.3), math.sin(0.3)])
    out = recover(spec, pc, phi, psi)
    assert np.allclose(out.state, phi, atol=1e-12)


def test_non_interacting_rejected():
    for word, bit in (("", 0), ("SWAP", 1), ("H2 P1", 0)):
        with pytest.raises(NotInteractingError):
            synthesize_recovery(PostselectedCircuit.from_word(word, bit))


def test_every_class_round_trips(reps, rng):
    for pc in reps.values():
        spec = synthesize_recovery(pc)
        for _ in range(5):
            phi, psi = verify.round_trip_inputs(spec, rng, mixed=bool(rng.integers(2)))
            out = recover(spec, pc, phi, psi)
            assert np.max(np.abs(out.state - phi)) < 1e-9


def test_recovery_circuits_are_interacting(reps):
    for pc in reps.values():
        assert is_interacting(synthesize_recovery(pc).circuit)


def test_recovery_of_recovery_keeps_bit(reps, rng):
    for pc in reps.values():
        first = synthesize_recovery(pc)
        second = synthesize_recovery(first.circuit)
        assert second.circuit.bit == first.circuit.bit == 0
        phi, psi = verify.round_trip_inputs(second, rng)
        assert np.allclose(recover(second, first.circuit, phi, psi).state, phi, atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_closed_form_probability(seed):
    rng = np.random.default_rng(seed)
    pc = verify.random_interacting(rng)
    spec = synthesize_recovery(pc)
    phi, psi = verify.round_trip_inputs(spec, rng, mixed=bool(seed % 2))
    out = recover(spec, pc, phi, psi)
    assert recovery_probability(spec, pc, phi, psi) == pytest.approx(out.probability, abs=1e-12)


def test_rate_table():
    for z2, want in ((0.96, 0.02), (0.50, 0.25), (0.04, 0.48), (0.0, 0.5)):
        assert recovery_rate(0.5, math.sqrt(z2)) == pytest.approx(want, abs=1e-12)


def test_rate_requires_failure_branch():
    with pytest.raises(ZeroProbabilityError):
        recovery_rate(1.0, 0.0)


def test_closed_form_needs_pure_resource():
    pc = PostselectedCircuit.from_word("CNOT", 0)
    spec = synthesize_recovery(pc)
    with pytest.raises(InvalidStateError):
        recovery_probability(spec, pc, pure_density([1, 0]), np.eye(2) / 2)


def test_resource_z_for_cnot():
    spec = synthesize_recovery(PostselectedCircuit.from_word("CNOT", 0))
    assert resource_z(spec, density_of([0.0, 0.0, 0.4])) == pytest.approx(0.4)


def test_candidates_contain_synthesized(reps):
    pc = reps[sigma(1, 2, sign=-1)]
    spec = synthesize_recovery(pc)
    cands = recovery_candidates(pc)
    # one strict class: 11520 * 2 / (30 projectors * 24 residuals)
    assert len(cands) == 32
    assert all(strictly_equivalent(c, spec.circuit) for c in cands)


@pytest.mark.slow
def test_uniqueness_all_classes(reps):
    assert len(reps) == 18
    assert all(verify_uniqueness(pc) for pc in reps.values())


def test_distinctness_table_values():
    rows = distinctness_table()
    assert len(rows) == 18
    for r in rows:
        assert round(r.v, 4) == TABLE_V[(r.label, r.sign)]
        # product input: a03 factorises
        assert r.a03 == pytest.approx(r.a30 * r.a33, abs=1e-12)
    assert minimum_signed_gap(rows) > 1e-3


def test_generic_vectors_are_pure():
    assert np.linalg.norm(GENERIC_PHI) == pytest.approx(1.0)
    assert np.linalg.norm(GENERIC_PSI) == pytest.approx(1.0)


def test_failed_branch_probability_complements():
    pc = PostselectedCircuit.from_word("H1 CNOT", 1)
    rho = np.kron(pure_density([1, 1j]), pure_density([0.6, 0.8]))
    q0 = outcome_probability(PostselectedCircuit(pc.clifford, 0), rho)
    q1 = outcome_probability(pc, rho)
    assert q0 + q1 == pytest.approx(1.0)

"""Recovery circuits for interacting postselected circuits.

If ``(C, b)`` fails (outcome ``1-b``) on ``φ⊗ψ``, running its recovery
circuit ``(C', b')`` on the failed output together with a fresh ``ψ``
returns ``φ`` whenever ``b'`` is observed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .circuits import (
    ZERO_PROBABILITY,
    PostselectedCircuit,
    kraus_operator,
    outcome_probability,
    output_state,
    strictly_equivalent,
)
from .classify import canonicalize, form_kind, FormKind, residual_gate
from .clifford import (
    CliffordElement,
    compose,
    enumerate_group,
    gate,
    invert,
    lift,
    matrix_of,
)
from .errors import InvalidStateError, NotInteractingError, ZeroProbabilityError
from .pauli import (
    PAULI_MATRICES,
    bloch_of,
    density_of,
    is_pure,
    signed_paulis,
    validate_density,
)

ROUND_TRIP_TOL = 1e-9


@dataclass(frozen=True)
class RecoverySpec:
    """Recovery circuit ``((G1†⊗I) CNOT (G2⊗G), 0)`` and its gates."""

    circuit: PostselectedCircuit
    g1: CliffordElement
    g2: CliffordElement
    g: CliffordElement

    def describe(self) -> dict:
        return {
            "circuit": self.circuit.clifford.label,
            "bit": self.circuit.bit,
            "g1": self.g1.label,
            "g2": self.g2.label,
            "g": self.g.label,
        }


def interacting_clifford(g1: CliffordElement, g2: CliffordElement, after=None) -> CliffordElement:
    """``(A⊗I) CNOT (G1⊗G2)`` with ``A = after`` (identity when None)."""
    c = compose(compose(lift(g1, 1), lift(g2, 2)), gate("CNOT"))
    if after is not None:
        c = compose(c, lift(after, 1))
    return c


def _require_interacting(pc: PostselectedCircuit):
    form = canonicalize(pc)
    if form.kind is not FormKind.INTERACTING:
        raise NotInteractingError(
            f"{pc} reduces to the {form.kind.value} form; its output is always an input"
        )
    return form


def synthesize_recovery(pc: PostselectedCircuit) -> RecoverySpec:
    """Build the recovery circuit of an interacting circuit.

    With ``(C, b) ~ (CNOT(G1⊗G), 0)``, the opposite outcome satisfies
    ``(C, 1-b) ≡ ((G2†⊗I) CNOT (G1⊗G), 1)`` for a Clifford ``G2`` read off
    the Kraus residual, and the recovery circuit is
    ``((G1†⊗I) CNOT (G2⊗G), 0)``.
    """
    form = _require_interacting(pc)
    g1, g = form.g1, form.g2
    failed = PostselectedCircuit(pc.clifford, 1 - pc.bit)
    reference = PostselectedCircuit(interacting_clifford(g1, g), 1)
    g2_dag = residual_gate(failed, reference)
    singles = enumerate_group(1)
    g2 = singles.canonical(invert(g2_dag))
    g1_dag = singles.canonical(invert(g1))
    circuit = PostselectedCircuit(interacting_clifford(g2, g, after=g1_dag), 0)
    return RecoverySpec(circuit, g1, g2, g)


def failed_output(source: PostselectedCircuit, phi, psi) -> np.ndarray:
    """First-qubit state after ``source`` sees the unwanted outcome on ``φ⊗ψ``."""
    failed = PostselectedCircuit(source.clifford, 1 - source.bit)
    return output_state(failed, np.kron(phi, psi)).state


def recover(spec: RecoverySpec, source: PostselectedCircuit, phi, psi):
    """Run the failure branch then the recovery; returns the recovery's MeasuredOutput."""
    phi = validate_density(phi, 2)
    psi = validate_density(psi, 2)
    broken = failed_output(source, phi, psi)
    return output_state(spec.circuit, np.kron(broken, psi))


def resource_z(spec: RecoverySpec, psi) -> float:
    """``z = <ψ|G† Z G|ψ>`` for the target-wire gate ``G`` of the recovery."""
    g = matrix_of(spec.g)
    return float(np.real(np.trace(g.conj().T @ PAULI_MATRICES[3] @ g @ psi)))


def recovery_rate(q_success: float, z: float) -> float:
    """Closed-form recovery probability ``((1 - z²)/4) / (1 - Q_b)``."""
    q_fail = 1.0 - q_success
    if q_fail <= ZERO_PROBABILITY:
        raise ZeroProbabilityError("the source circuit never fails; nothing to recover")
    return ((1.0 - z * z) / 4.0) / q_fail


def recovery_probability(spec: RecoverySpec, source: PostselectedCircuit, phi, psi) -> float:
    phi = validate_density(phi, 2)
    psi = validate_density(psi, 2)
    if not is_pure(psi):
        raise InvalidStateError("the closed-form recovery probability needs a pure ψ")
    q_b = outcome_probability(source, np.kron(phi, psi))
    return recovery_rate(q_b, resource_z(spec, psi))


# -- uniqueness --------------------------------------------------------------

GENERIC_PHI = np.sqrt(np.array([2.0, 5.0, 10.0]) / 17.0)
GENERIC_PSI = np.sqrt(np.array([1.0, 3.0, 7.0]) / 11.0)

_TETRAHEDRON = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3)
PROBE_BLOCH = np.vstack([_TETRAHEDRON, [[0.3, -0.2, 0.4]], [GENERIC_PHI]])


def probe_inputs() -> tuple[list[np.ndarray], np.ndarray]:
    """Probe states φ (4 tetrahedral, 1 mixed, 1 generic pure) and the fixed ψ."""
    return [density_of(v) for v in PROBE_BLOCH], density_of(GENERIC_PSI)


def all_kraus() -> tuple[np.ndarray, list[PostselectedCircuit]]:
    """Kraus operators of all 23040 postselected circuits, in table order."""
    table = enumerate_group(2)
    mats = table.matrices
    stacked = np.stack([kraus_operator(mats, 0), kraus_operator(mats, 1)], axis=1)
    circuits = [PostselectedCircuit(c, b) for c in table for b in (0, 1)]
    return stacked.reshape(-1, 2, 4), circuits


def recovery_candidates(pc: PostselectedCircuit, tol: float = ROUND_TRIP_TOL) -> list[PostselectedCircuit]:
    """Every postselected circuit that recovers all probe states for ``pc``.

    Passing the probes is necessary for being a recovery circuit, so the
    result is a superset of the true recovery circuits.
    """
    _require_interacting(pc)
    phis, psi = probe_inputs()
    inputs = np.stack([np.kron(failed_output(pc, phi, psi), psi) for phi in phis])
    kraus, circuits = all_kraus()
    out = kernels.sandwich(kraus, inputs)
    q = np.real(np.trace(out, axis1=2, axis2=3))
    with np.errstate(divide="ignore", invalid="ignore"):
        states = out / q[..., None, None]
    target = np.stack(phis)
    err = np.max(np.abs(states - target[None]), axis=(2, 3))
    ok = np.all((q > ZERO_PROBABILITY) & (err < tol), axis=1)
    return [circuits[i] for i in np.flatnonzero(ok)]


def verify_uniqueness(pc: PostselectedCircuit) -> bool:
    """Check that every probe-passing circuit is strictly equivalent to the synthesized one."""
    spec = synthesize_recovery(pc)
    candidates = recovery_candidates(pc)
    if not any(strictly_equivalent(c, spec.circuit) for c in candidates):
        return False
    return all(strictly_equivalent(c, spec.circuit) for c in candidates)


# -- distinguishing table ----------------------------------------------------


@dataclass(frozen=True)
class DistinctnessRow:
    lambda03: object
    a03: float
    a30: float
    a33: float
    v: float

    @property
    def sign(self) -> int:
        return self.lambda03.sign

    @property
    def label(self) -> str:
        return "".join(str(o) for o in self.lambda03.ops)


def distinctness_table(phi2=GENERIC_PHI, psi=GENERIC_PSI) -> list[DistinctnessRow]:
    """Output Bloch component ``v = (a30 + a33)/(1 + a03)`` for each ``λ03 = ±σ_jk``.

    ``λ30 = σ_j0`` and ``λ33 = ±σ_0k`` so that ``λ03 = λ30 λ33``; the
    coefficients ``a = Tr(λ (φ2⊗ψ))`` are taken from dense traces.
    """
    rho = np.kron(density_of(phi2), density_of(psi))
    rows = []
    for lam in signed_paulis(2):
        j, k = lam.ops
        lam30 = np.kron(PAULI_MATRICES[j], PAULI_MATRICES[0])
        lam33 = lam.sign * np.kron(PAULI_MATRICES[0], PAULI_MATRICES[k])
        a03 = float(np.real(np.trace(lam.matrix() @ rho)))
        a30 = float(np.real(np.trace(lam30 @ rho)))
        a33 = float(np.real(np.trace(lam33 @ rho)))
        rows.append(DistinctnessRow(lam, a03, a30, a33, (a30 + a33) / (1 + a03)))
    return rows


def minimum_signed_gap(rows: list[DistinctnessRow]) -> float:
    """Smallest pairwise distance among all values ±v."""
    vals = np.array([r.v for r in rows] + [-r.v for r in rows])
    diff = np.abs(vals[:, None] - vals[None, :])
    return float(np.min(diff[~np.eye(len(vals), dtype=bool)]))


def bloch_error(a, b) -> float:
    return float(np.max(np.abs(bloch_of(a) - bloch_of(b))))

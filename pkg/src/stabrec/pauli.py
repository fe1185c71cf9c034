"""Exact one- and two-qubit Pauli algebra and Bloch-vector conversion.

Single-qubit Paulis are indexed 0..3 for I, X, Y, Z.  A :class:`Pauli`
carries one index per qubit plus a phase stored as an exponent of ``i``
(mod 4), so products and conjugations never touch floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ArityMismatchError, InvalidStateError

LABELS = "IXYZ"

PAULI_MATRICES = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

_PHASE_CHARS = {0: "+", 1: "+i", 2: "-", 3: "-i"}

STATE_TOL = 1e-9
HERMITIAN_TOL = 1e-12


def single_product(a: int, b: int) -> tuple[int, int]:
    """Return ``(phase_exponent, index)`` with ``sigma_a sigma_b = i**phase sigma_index``."""
    if a == 0 or b == 0 or a == b:
        return 0, a ^ b
    # XY = iZ, YZ = iX, ZX = iY
    return (1 if (b - a) % 3 == 1 else 3), a ^ b


@dataclass(frozen=True, slots=True)
class Pauli:
    """A phased tensor product of single-qubit Paulis.

    ``ops`` holds one index per qubit (``(1, 3)`` is X⊗Z) and ``phase`` is
    the exponent ``e`` of the prefactor ``i**e``.
    """

    ops: tuple[int, ...]
    phase: int = 0

    @classmethod
    def _raw(cls, ops: tuple[int, ...], phase: int) -> Pauli:
        # trusted fast path for internal arithmetic
        p = object.__new__(cls)
        object.__setattr__(p, "ops", ops)
        object.__setattr__(p, "phase", phase % 4)
        return p

    def __post_init__(self):
        if len(self.ops) not in (1, 2):
            raise ValueError(f"expected 1 or 2 tensor factors, got {len(self.ops)}")
        if any(o not in (0, 1, 2, 3) for o in self.ops):
            raise ValueError(f"Pauli indices must lie in 0..3, got {self.ops}")
        object.__setattr__(self, "ops", tuple(int(o) for o in self.ops))
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @classmethod
    def parse(cls, text: str) -> Pauli:
        """Parse strings like ``"XZ"``, ``"-Y"`` or ``"+iZI"``."""
        s = text.strip()
        phase = 0
        if s.startswith("-"):
            phase, s = 2, s[1:]
        elif s.startswith("+"):
            s = s[1:]
        if s.startswith("i"):
            phase, s = phase + 1, s[1:]
        return cls(tuple(LABELS.index(c) for c in s), phase)

    @property
    def arity(self) -> int:
        return len(self.ops)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def sign(self) -> int:
        if not self.is_hermitian:
            raise ValueError(f"{self} is not Hermitian and has no real sign")
        return 1 if self.phase == 0 else -1

    @property
    def is_identity(self) -> bool:
        return not any(self.ops)

    def unsigned(self) -> Pauli:
        return Pauli(self.ops)

    def matrix(self) -> np.ndarray:
        m = np.array([[1.0 + 0j]])
        for o in self.ops:
            m = np.kron(m, PAULI_MATRICES[o])
        return (1j**self.phase) * m

    def commutes(self, other: Pauli) -> bool:
        return commutes(self, other)

    def __neg__(self) -> Pauli:
        return Pauli._raw(self.ops, self.phase + 2)

    def __mul__(self, other: Pauli) -> Pauli:
        return pauli_mul(self, other)

    def __str__(self) -> str:
        return _PHASE_CHARS[self.phase] + "".join(LABELS[o] for o in self.ops)

    @property
    def sigma_label(self) -> str:
        """Label in ``σ_jk`` index notation, e.g. ``-s33``."""
        return _PHASE_CHARS[self.phase] + "s" + "".join(str(o) for o in self.ops)


def sigma(*indices: int, sign: int = 1) -> Pauli:
    """``sigma(1, 3)`` is +X⊗Z; ``sigma(3, 3, sign=-1)`` is -Z⊗Z."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return Pauli(tuple(indices), 0 if sign == 1 else 2)


def pauli_mul(a: Pauli, b: Pauli) -> Pauli:
    """Exact product ``a·b`` with the phase tracked as a power of i."""
    if a.arity != b.arity:
        raise ArityMismatchError(f"cannot multiply {a.arity}- and {b.arity}-qubit Paulis")
    phase = a.phase + b.phase
    ops = []
    for x, y in zip(a.ops, b.ops):
        p, o = single_product(x, y)
        phase += p
        ops.append(o)
    return Pauli._raw(tuple(ops), phase)


def commutes(a: Pauli, b: Pauli) -> bool:
    anti = sum(1 for x, y in zip(a.ops, b.ops) if x and y and x != y)
    return anti % 2 == 0


def all_paulis(arity: int, include_identity: bool = False) -> list[Pauli]:
    """Unsigned Paulis on ``arity`` qubits in lexicographic index order."""
    out = [Pauli(ops) for ops in itertools.product(range(4), repeat=arity)]
    return out if include_identity else out[1:]


def signed_paulis(arity: int = 2) -> list[Pauli]:
    """All ±σ with every tensor factor nontrivial (18 of them for two qubits)."""
    out = []
    for sign in (1, -1):
        for ops in itertools.product(range(1, 4), repeat=arity):
            out.append(sigma(*ops, sign=sign))
    return out


# -- states ------------------------------------------------------------------


def validate_density(rho, dim: int | None = None) -> np.ndarray:
    """Return ``rho`` as a complex array, raising InvalidStateError if it is not a state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4):
        raise InvalidStateError(f"density matrix must be 2x2 or 4x4, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise InvalidStateError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > HERMITIAN_TOL:
        raise InvalidStateError(f"density matrix has trace {np.trace(rho).real!r}")
    if np.min(np.linalg.eigvalsh(rho)) < -STATE_TOL:
        raise InvalidStateError("density matrix has a negative eigenvalue")
    return rho


def bloch_of(phi) -> np.ndarray:
    """Bloch vector (Tr Xφ, Tr Yφ, Tr Zφ) of a single-qubit state."""
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (2, 2):
        raise InvalidStateError(f"bloch_of needs a 2x2 density matrix, got shape {phi.shape}")
    return np.real(np.einsum("pij,ji->p", PAULI_MATRICES[1:], phi))


def density_of(v) -> np.ndarray:
    """Single-qubit density matrix (I + xX + yY + zZ)/2."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise InvalidStateError(f"Bloch vector must have 3 components, got shape {v.shape}")
    if np.linalg.norm(v) > 1 + STATE_TOL:
        raise InvalidStateError(f"Bloch vector {v} lies outside the unit ball")
    return 0.5 * (PAULI_MATRICES[0] + np.einsum("p,pij->ij", v, PAULI_MATRICES[1:]))


def pure_density(amplitudes) -> np.ndarray:
    psi = np.asarray(amplitudes, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def is_pure(rho, tol: float = STATE_TOL) -> bool:
    rho = np.asarray(rho, dtype=complex)
    return abs(np.trace(rho @ rho).real - 1.0) <= tol

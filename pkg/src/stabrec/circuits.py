"""Postselected two-to-one stabilizer circuits.

A circuit ``(C, b)`` applies the two-qubit Clifford ``C`` and postselects a
Z-measurement of the second qubit on ``b``.  Everything here goes through
its Kraus operator ``K = (I⊗<b|) U_C``, a 2x4 coisometry (``K K† = I``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .clifford import CliffordElement, from_word, match_single_clifford, matrix_of
from .errors import ArityMismatchError, ZeroProbabilityError
from .pauli import validate_density

ZERO_PROBABILITY = 1e-12
EQUIVALENCE_TOL = 1e-10


@dataclass(frozen=True)
class PostselectedCircuit:
    clifford: CliffordElement
    bit: int

    def __post_init__(self):
        if self.bit not in (0, 1):
            raise ValueError(f"postselected bit must be 0 or 1, got {self.bit!r}")
        if self.clifford.arity != 2:
            raise ArityMismatchError("postselected circuits act on two qubits")

    @classmethod
    def from_word(cls, word, bit: int = 0) -> PostselectedCircuit:
        if isinstance(word, str):
            word = word.split()
        return cls(from_word(word, 2), bit)

    @cached_property
    def kraus(self) -> np.ndarray:
        return kraus_operator(matrix_of(self.clifford), self.bit)

    def __str__(self):
        return f"({self.clifford.label}, {self.bit})"


@dataclass(frozen=True)
class MeasuredOutput:
    probability: float
    state: np.ndarray


def kraus_operator(u: np.ndarray, bit: int) -> np.ndarray:
    """``(I⊗<b|) U``; works on a single 4x4 matrix or a stack of them."""
    return u[..., [bit, 2 + bit], :]


def outcome_probability(pc: PostselectedCircuit, rho) -> float:
    """Probability of measuring ``pc.bit`` on ``C rho C†``."""
    rho = validate_density(rho, 4)
    k = pc.kraus
    return float(np.real(np.trace(k @ rho @ k.conj().T)))


def output_state(pc: PostselectedCircuit, rho) -> MeasuredOutput:
    """Renormalised first-qubit state after postselecting on ``pc.bit``."""
    rho = validate_density(rho, 4)
    k = pc.kraus
    unnorm = k @ rho @ k.conj().T
    q = float(np.real(np.trace(unnorm)))
    if q <= ZERO_PROBABILITY:
        raise ZeroProbabilityError(f"outcome {pc.bit} of {pc} has probability {q:.3g}")
    state = unnorm / q
    return MeasuredOutput(q, 0.5 * (state + state.conj().T))


def proportional_phase(a: np.ndarray, b: np.ndarray, tol: float = EQUIVALENCE_TOL):
    """Unit scalar ``c`` with ``a = c b`` within ``tol``, or None."""
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) < tol:
        return None
    c = a[idx] / b[idx]
    if abs(abs(c) - 1) > tol or np.max(np.abs(a - c * b)) > tol:
        return None
    return c


def strictly_equivalent(a: PostselectedCircuit, c: PostselectedCircuit) -> bool:
    return proportional_phase(a.kraus, c.kraus) is not None


def clifford_equivalent(a: PostselectedCircuit, c: PostselectedCircuit) -> CliffordElement | None:
    """Single-qubit Clifford ``G`` with ``K_a ρ K_a† = G K_c ρ K_c† G†`` for all ρ.

    Because ``K_c K_c† = I``, any such G is proportional to ``K_a K_c†``.
    """
    m = a.kraus @ c.kraus.conj().T
    g = match_single_clifford(m)
    if g is None:
        return None
    if proportional_phase(a.kraus, matrix_of(g) @ c.kraus) is None:
        return None
    return g

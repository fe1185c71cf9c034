"""Worked pipelines built on the circuit ``(CNOT, 0)``.

``ladder_step`` climbs the states ``|H_i> = cos θ_i |0> + sin θ_i |1>`` with
``cot θ_i = cot^{i+1}(π/8)`` by feeding ``|H_i>⊗|H_0>`` through a CNOT.
``par_rotate`` applies a Z-rotation by consuming ``|γ> = (|0> + e^{iγ}|1>)/√2``;
on failure the rotation is ``-γ`` and the same circuit undoes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .circuits import MeasuredOutput, PostselectedCircuit, output_state
from .pauli import pure_density, validate_density

CNOT0 = PostselectedCircuit.from_word("CNOT", 0)
CNOT1 = PostselectedCircuit.from_word("CNOT", 1)

# past this index tan(π/8)**(i+1) underflows toward the smallest doubles
LADDER_PRECISION_LIMIT = 200


class Branches(NamedTuple):
    success: MeasuredOutput
    failure: MeasuredOutput


@dataclass(frozen=True)
class LadderState:
    i: int
    theta: float

    @property
    def bloch(self) -> np.ndarray:
        return np.array([math.sin(2 * self.theta), 0.0, math.cos(2 * self.theta)])

    @property
    def density(self) -> np.ndarray:
        return pure_density([math.cos(self.theta), math.sin(self.theta)])


def ladder_theta(i: int) -> float:
    # tan θ_i = tan^{i+1}(π/8); i = -1 gives π/4
    return math.atan(math.tan(math.pi / 8) ** (i + 1))


def ladder_state(i: int) -> LadderState:
    if i < 0:
        raise ValueError(f"ladder index must be >= 0, got {i}")
    return LadderState(i, ladder_theta(i))


def ladder_step(i: int) -> Branches:
    """Run ``(CNOT, ·)`` on ``|H_i>⊗|H_0>``.

    Success yields ``|H_{i+1}>``; failure yields ``|H_{i-1}>`` (for ``i = 0``
    the failure output is ``|+>``, the θ = π/4 state).
    """
    rho = np.kron(ladder_state(i).density, ladder_state(0).density)
    return Branches(output_state(CNOT0, rho), output_state(CNOT1, rho))


@dataclass(frozen=True)
class PhaseResource:
    gamma: float

    @property
    def density(self) -> np.ndarray:
        return pure_density([1.0, np.exp(1j * self.gamma)])


def z_rotation(q, gamma: float) -> np.ndarray:
    """``q`` rotated about Z by ``gamma`` (``α|0> + β|1> -> α|0> + e^{iγ}β|1>``)."""
    u = np.diag([1.0, np.exp(1j * gamma)])
    return u @ np.asarray(q, dtype=complex) @ u.conj().T


def par_rotate(q, gamma: float) -> Branches:
    q = validate_density(q, 2)
    rho = np.kron(q, PhaseResource(gamma).density)
    return Branches(output_state(CNOT0, rho), output_state(CNOT1, rho))


def par_recover(failed, gamma: float) -> MeasuredOutput:
    """Retry with a fresh ``|γ>``; outcome 0 restores the pre-rotation state."""
    failed = validate_density(failed, 2)
    return output_state(CNOT0, np.kron(failed, PhaseResource(gamma).density))

"""Reduction of any postselected circuit to one of three canonical forms.

For a circuit ``(C, b)`` the postselection projector is
``Π = C†(I⊗|b><b|)C`` and ``2Π = I + λ03`` for a signed Pauli ``λ03``.
Circuits sharing ``λ03`` are Clifford equivalent, and the position of the
identity factor in ``λ03 = ±σ_jk`` picks the form:

* ``j = 0``  trivial:      ``((G3⊗I)(I⊗G1), 0)``
* ``k = 0``  swap:         ``((G3⊗I)(I⊗G1) SWAP, 0)``
* otherwise  interacting:  ``((G3⊗I) CNOT (G1⊗G2), 0)``

``G3`` is the residual first-qubit gate that upgrades Clifford
equivalence to strict equivalence.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, replace

import numpy as np

from .circuits import PostselectedCircuit, proportional_phase
from .clifford import (
    CliffordElement,
    compose,
    conjugate,
    enumerate_group,
    from_word,
    gate,
    identity,
    invert,
    lift,
    match_single_clifford,
)
from .pauli import Pauli, sigma


class FormKind(str, enum.Enum):
    TRIVIAL = "trivial"
    SWAP = "swap"
    INTERACTING = "interacting"


# G with G† Z G = target, i.e. G maps the target Pauli onto Z
Z_ALIGNERS = {
    (1, 1): ("H",),
    (-1, 1): ("H", "X"),
    (1, 2): ("H", "P", "H"),
    (-1, 2): ("P", "H"),
    (1, 3): (),
    (-1, 3): ("X",),
}


def z_aligner(axis: int, sign: int = 1) -> CliffordElement:
    return from_word(Z_ALIGNERS[(sign, axis)], 1)


SIGMA_03 = sigma(0, 3)


def projector_pauli(pc: PostselectedCircuit) -> Pauli:
    """Signed Pauli ``λ03 = (-1)^b C† σ03 C`` with ``2Π = σ00 + λ03``."""
    lam = conjugate(invert(pc.clifford), SIGMA_03)
    return -lam if pc.bit else lam


@dataclass(frozen=True)
class CanonicalForm:
    kind: FormKind
    lambda03: Pauli
    g1: CliffordElement
    g2: CliffordElement | None
    g3: CliffordElement
    outcome: int = 0

    def clifford(self, with_residual: bool = True) -> CliffordElement:
        """Two-qubit element of the reconstructed circuit, in circuit order."""
        if self.kind is FormKind.INTERACTING:
            c = compose(compose(lift(self.g1, 1), lift(self.g2, 2)), gate("CNOT"))
        elif self.kind is FormKind.SWAP:
            c = compose(gate("SWAP"), lift(self.g1, 2))
        else:
            c = lift(self.g1, 2)
        if with_residual:
            c = compose(c, lift(self.g3, 1))
        return c

    def circuit(self, with_residual: bool = True) -> PostselectedCircuit:
        return PostselectedCircuit(self.clifford(with_residual), self.outcome)

    def describe(self) -> dict:
        return {
            "kind": self.kind.value,
            "lambda03": str(self.lambda03),
            "g1": self.g1.label,
            "g2": self.g2.label if self.g2 is not None else "",
            "g3": self.g3.label,
            "outcome": self.outcome,
        }


def form_kind(lam: Pauli) -> FormKind:
    j, k = lam.ops
    if j == 0:
        return FormKind.TRIVIAL
    if k == 0:
        return FormKind.SWAP
    return FormKind.INTERACTING


def residual_gate(pc: PostselectedCircuit, reference: PostselectedCircuit) -> CliffordElement:
    """Single-qubit Clifford ``G`` with ``K_pc = e^{iθ} G K_ref``.

    Only valid when both circuits share a projector; anything else means a
    bug upstream, so a failed match raises instead of returning None.
    """
    m = pc.kraus @ reference.kraus.conj().T
    g = match_single_clifford(m)
    if g is None:
        raise RuntimeError(f"no Clifford residual between {pc} and {reference}")
    return g


def canonicalize(pc: PostselectedCircuit) -> CanonicalForm:
    lam = projector_pauli(pc)
    kind = form_kind(lam)
    j, k = lam.ops
    s = lam.sign
    if kind is FormKind.INTERACTING:
        g1, g2 = z_aligner(j, s), z_aligner(k)
    elif kind is FormKind.SWAP:
        g1, g2 = z_aligner(j, s), None
    else:
        g1, g2 = z_aligner(k, s), None
    form = CanonicalForm(kind, lam, g1, g2, identity(1))
    g3 = residual_gate(pc, form.circuit(with_residual=False))
    return replace(form, g3=enumerate_group(1).canonical(g3))


def flip_outcome(form: CanonicalForm) -> CanonicalForm:
    """Form Clifford equivalent to the same circuit postselected on the other bit.

    An X before the measurement flips the outcome; for the interacting form
    it commutes through the CNOT target onto ``G2``.  ``G3`` is carried
    over unchanged, so the result is only guaranteed up to Clifford
    equivalence; run :func:`canonicalize` on the flipped circuit when the
    exact residual is needed.
    """
    x = gate("X")
    lam = -form.lambda03
    if form.kind is FormKind.INTERACTING:
        return replace(form, lambda03=lam, g2=compose(form.g2, x))
    return replace(form, lambda03=lam, g1=compose(form.g1, x))


def is_interacting(pc: PostselectedCircuit) -> bool:
    return form_kind(projector_pauli(pc)) is FormKind.INTERACTING


@dataclass(frozen=True)
class Census:
    projector_classes: int
    interacting_classes: int
    trivial_classes: int
    swap_classes: int
    strict_classes: int
    strict_interacting_classes: int

    def rows(self) -> list[tuple[str, int]]:
        return [
            ("interacting", self.interacting_classes),
            ("trivial", self.trivial_classes),
            ("swap", self.swap_classes),
            ("strict_interacting", self.strict_interacting_classes),
            ("projector_classes", self.projector_classes),
        ]


def all_postselected_circuits():
    for c in enumerate_group(2):
        for b in (0, 1):
            yield PostselectedCircuit(c, b)


def census() -> Census:
    """Bucket all 23040 postselected circuits by projector and by strict class."""
    by_projector: dict[Pauli, FormKind] = {}
    strict: set[tuple[Pauli, tuple[Pauli, ...]]] = set()
    for pc in all_postselected_circuits():
        form = canonicalize(pc)
        by_projector[form.lambda03] = form.kind
        strict.add((form.lambda03, form.g3.tableau))
    kinds = Counter(by_projector.values())
    return Census(
        projector_classes=len(by_projector),
        interacting_classes=kinds[FormKind.INTERACTING],
        trivial_classes=kinds[FormKind.TRIVIAL],
        swap_classes=kinds[FormKind.SWAP],
        strict_classes=len(strict),
        strict_interacting_classes=sum(
            1 for lam, _ in strict if by_projector[lam] is FormKind.INTERACTING
        ),
    )


def reconstruction_holds(pc: PostselectedCircuit, form: CanonicalForm | None = None) -> bool:
    form = form or canonicalize(pc)
    return proportional_phase(pc.kraus, form.circuit().kraus) is not None


def class_representatives(kind: FormKind | None = None) -> dict[Pauli, PostselectedCircuit]:
    """First enumerated circuit for each projector class (optionally of one kind)."""
    reps: dict[Pauli, PostselectedCircuit] = {}
    for pc in all_postselected_circuits():
        lam = projector_pauli(pc)
        if lam not in reps and (kind is None or form_kind(lam) is kind):
            reps[lam] = pc
    return reps


def kraus_key(k: np.ndarray, decimals: int = 8) -> bytes:
    """Phase-normalised, rounded Kraus operator usable as a dict key."""
    flat = k.ravel()
    idx = int(np.argmax(np.abs(flat) > 1e-6))
    k = k * (abs(flat[idx]) / flat[idx])
    return (np.round(k, decimals) + 0.0).tobytes()

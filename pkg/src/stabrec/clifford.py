"""One- and two-qubit Clifford groups modulo global phase.

An element is identified by its tableau: the images ``C g C†`` of the
generator Paulis (X, Z for one qubit; X⊗I, Z⊗I, I⊗X, I⊗Z for two).  Each
element also carries a gate word used to build its matrix.  Words are read
in circuit (time) order, so the word ``("H1", "CNOT")`` is the unitary
``CNOT · (H⊗I)``.

Single-qubit words use the tokens H, P, X, Y, Z.  Two-qubit words use the
same gates with a wire suffix (H1, P2, ...) plus CNOT (control on wire 1)
and SWAP.
"""

from __future__ import annotations

import functools
import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ArityMismatchError
from .pauli import Pauli, pauli_mul

_S = 1 / np.sqrt(2)

GATE_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "H": np.array([[_S, _S], [_S, -_S]], dtype=complex),
    "P": np.array([[1, 0], [0, 1j]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}

# images of (X, Z) under conjugation
_SINGLE_TABLEAUX = {
    "I": ("+X", "+Z"),
    "H": ("+Z", "+X"),
    "P": ("+Y", "+Z"),
    "X": ("+X", "-Z"),
    "Y": ("-X", "-Z"),
    "Z": ("-X", "+Z"),
}

# images of (XI, ZI, IX, IZ)
_TWO_QUBIT_TABLEAUX = {
    "CNOT": ("+XX", "+ZI", "+IX", "+ZZ"),
    "SWAP": ("+IX", "+IZ", "+XI", "+ZI"),
}

# single-qubit tokens; the two-qubit alphabet adds wire suffixes
SINGLE_TOKENS = tuple(_SINGLE_TABLEAUX)
TWO_QUBIT_TOKENS = tuple(f"{g}{w}" for g in SINGLE_TOKENS if g != "I" for w in (1, 2)) + (
    "CNOT",
    "SWAP",
)

GENERATORS = {1: ("H", "P"), 2: ("H1", "P1", "H2", "P2", "CNOT")}

_INVERSE_TOKEN = {"P": ("P", "P", "P")}

_TOKEN_RE = re.compile(r"^([HPXYZI])([12])$")


def generator_paulis(arity: int) -> tuple[Pauli, ...]:
    if arity == 1:
        return (Pauli((1,)), Pauli((3,)))
    return (Pauli((1, 0)), Pauli((3, 0)), Pauli((0, 1)), Pauli((0, 3)))


@dataclass(frozen=True, eq=False)
class CliffordElement:
    """Clifford unitary modulo phase, identified by its conjugation tableau.

    Equality and hashing use ``(arity, tableau)`` only; two elements with
    different words but equal tableaux compare equal.
    """

    arity: int
    tableau: tuple[Pauli, ...]
    word: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.arity not in (1, 2):
            raise ValueError("arity must be 1 or 2")
        if len(self.tableau) != 2 * self.arity:
            raise ValueError("tableau must list one image per generator")
        object.__setattr__(self, "word", tuple(self.word))

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.arity == other.arity and self.tableau == other.tableau

    def __hash__(self):
        return hash((self.arity, self.tableau))

    def __repr__(self):
        return f"CliffordElement({self.label!r}, tableau={self.tableau_string})"

    @property
    def label(self) -> str:
        return " ".join(self.word) if self.word else "I"

    @property
    def tableau_string(self) -> str:
        return " ".join(str(p) for p in self.tableau)

    def _image(self, ops: tuple[int, ...]) -> Pauli:
        img = Pauli._raw((0,) * self.arity, 0)
        for wire, o in enumerate(ops):
            if o == 0:
                continue
            gx, gz = self.tableau[2 * wire], self.tableau[2 * wire + 1]
            if o == 1:
                f = gx
            elif o == 3:
                f = gz
            else:
                # Y = i X Z
                f = pauli_mul(gx, gz)
                f = Pauli._raw(f.ops, f.phase + 1)
            img = pauli_mul(img, f)
        return img

    @cached_property
    def _images(self) -> dict[tuple[int, ...], Pauli]:
        # image of every unsigned Pauli
        return {ops: self._image(ops) for ops in itertools.product(range(4), repeat=self.arity)}

    def __matmul__(self, other: CliffordElement) -> CliffordElement:
        """Matrix-order product: ``a @ b`` applies ``b`` first."""
        return compose(other, self)


def conjugate(c: CliffordElement, p: Pauli) -> Pauli:
    """Return ``C p C†`` with the phase tracked exactly."""
    if c.arity != p.arity:
        raise ArityMismatchError(f"{c.arity}-qubit Clifford cannot act on {p}")
    cached = c.__dict__.get("_images")
    img = cached[p.ops] if cached is not None else c._image(p.ops)
    return Pauli._raw(img.ops, img.phase + p.phase)


def compose(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """Circuit that runs ``a`` and then ``b``; its unitary is ``U_b U_a``."""
    if a.arity != b.arity:
        raise ArityMismatchError("cannot compose Cliffords of different arity")
    return CliffordElement(
        a.arity, tuple(conjugate(b, t) for t in a.tableau), a.word + b.word
    )


def invert(c: CliffordElement) -> CliffordElement:
    reverse = {}
    for ops, img in c._images.items():
        reverse[img.ops] = (ops, img.phase)
    tableau = []
    for g in generator_paulis(c.arity):
        ops, phase = reverse[g.ops]
        tableau.append(Pauli._raw(ops, -phase))
    word = []
    for tok in reversed(c.word):
        base, wire = _split_token(tok)
        for t in _INVERSE_TOKEN.get(base, (base,)):
            word.append(t + wire)
    return CliffordElement(c.arity, tuple(tableau), tuple(word))


def identity(arity: int) -> CliffordElement:
    return CliffordElement(arity, generator_paulis(arity), ())


def _split_token(tok: str) -> tuple[str, str]:
    m = _TOKEN_RE.match(tok)
    if m:
        return m.group(1), m.group(2)
    return tok, ""


@functools.lru_cache(maxsize=None)
def gate(token: str) -> CliffordElement:
    """Element for one gate token; arity inferred from the token."""
    if token in _SINGLE_TABLEAUX:
        images = tuple(Pauli.parse(s) for s in _SINGLE_TABLEAUX[token])
        return CliffordElement(1, images, () if token == "I" else (token,))
    if token in _TWO_QUBIT_TABLEAUX:
        images = tuple(Pauli.parse(s) for s in _TWO_QUBIT_TABLEAUX[token])
        return CliffordElement(2, images, (token,))
    base, wire = _split_token(token)
    if wire and base in _SINGLE_TABLEAUX:
        return lift(gate(base), int(wire))
    raise ValueError(f"unknown gate token {token!r}")


def lift(g: CliffordElement, wire: int) -> CliffordElement:
    """Embed a single-qubit element on ``wire`` (1 or 2) of a two-qubit register."""
    if g.arity != 1:
        raise ArityMismatchError("only single-qubit elements can be lifted")
    if wire not in (1, 2):
        raise ValueError("wire must be 1 or 2")

    def up(p: Pauli) -> Pauli:
        ops = (p.ops[0], 0) if wire == 1 else (0, p.ops[0])
        return Pauli(ops, p.phase)

    gx, gz = (up(t) for t in g.tableau)
    if wire == 1:
        tableau = (gx, gz, Pauli((0, 1)), Pauli((0, 3)))
    else:
        tableau = (Pauli((1, 0)), Pauli((3, 0)), gx, gz)
    return CliffordElement(2, tableau, tuple(f"{t}{wire}" for t in g.word))


def tensor(g1: CliffordElement, g2: CliffordElement) -> CliffordElement:
    """``g1 ⊗ g2`` for single-qubit elements."""
    return compose(lift(g1, 1), lift(g2, 2))


def from_word(word, arity: int = 2) -> CliffordElement:
    """Element realised by a gate word given in circuit order."""
    out = identity(arity)
    for tok in word:
        g = gate(tok)
        if g.arity != arity:
            raise ArityMismatchError(f"token {tok!r} does not act on {arity} qubit(s)")
        out = compose(out, g)
    return out


@functools.lru_cache(maxsize=None)
def token_matrix(token: str) -> np.ndarray:
    if token in GATE_MATRICES:
        return GATE_MATRICES[token]
    base, wire = _split_token(token)
    if not wire:
        raise ValueError(f"unknown gate token {token!r}")
    m = GATE_MATRICES[base]
    return np.kron(m, np.eye(2)) if wire == "1" else np.kron(np.eye(2), m)


def matrix_of(c: CliffordElement) -> np.ndarray:
    """Unitary realising ``c`` (product of gate matrices along its word)."""
    u = np.eye(2**c.arity, dtype=complex)
    for tok in c.word:
        u = token_matrix(tok) @ u
    return u


@dataclass(frozen=True)
class CliffordGroupTable:
    arity: int
    elements: tuple[CliffordElement, ...]
    index: dict[tuple[Pauli, ...], int] = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> CliffordElement:
        return self.elements[i]

    def ordinal(self, c: CliffordElement) -> int:
        return self.index[c.tableau]

    def canonical(self, c: CliffordElement) -> CliffordElement:
        """The table's representative (with its shortest-found word) for ``c``."""
        return self.elements[self.ordinal(c)]

    @cached_property
    def matrices(self) -> np.ndarray:
        return np.stack([matrix_of(c) for c in self.elements])

    def listing(self) -> list[tuple[int, str, str]]:
        return [(i, c.label, c.tableau_string) for i, c in enumerate(self.elements)]


@functools.lru_cache(maxsize=None)
def enumerate_group(arity: int) -> CliffordGroupTable:
    """Breadth-first closure of the generators, deduplicated by tableau.

    Generators are tried in the fixed order H, P (one qubit) or
    H1, P1, H2, P2, CNOT (two qubits), so the table and its words are
    deterministic.
    """
    if arity not in GENERATORS:
        raise ValueError("arity must be 1 or 2")
    gens = [gate(t) for t in GENERATORS[arity]]
    start = identity(arity)
    elements = [start]
    index = {start.tableau: 0}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for g in gens:
            nxt = compose(c, g)
            if nxt.tableau not in index:
                index[nxt.tableau] = len(elements)
                elements.append(nxt)
                queue.append(nxt)
    return CliffordGroupTable(arity, tuple(elements), index)


def match_single_clifford(m: np.ndarray, tol: float = 1e-8) -> CliffordElement | None:
    """Single-qubit Clifford whose matrix equals ``m`` up to a unit phase, if any."""
    table = enumerate_group(1)
    mats = table.matrices
    overlaps = np.einsum("nij,ij->n", mats.conj(), m) / 2
    n = int(np.argmax(np.abs(overlaps)))
    c = overlaps[n]
    if abs(abs(c) - 1) > tol or np.max(np.abs(m - c * mats[n])) > tol:
        return None
    return table[n]

"""Two-qubit postselected stabilizer circuits and their recovery circuits."""

from .circuits import (
    MeasuredOutput,
    PostselectedCircuit,
    clifford_equivalent,
    outcome_probability,
    output_state,
    strictly_equivalent,
)
from .classify import CanonicalForm, FormKind, canonicalize, census, flip_outcome, is_interacting
from .clifford import CliffordElement, compose, enumerate_group, from_word, gate, invert, matrix_of
from .errors import (
    ArityMismatchError,
    DegenerateConfigError,
    InvalidStateError,
    NotInteractingError,
    StabRecError,
    ZeroProbabilityError,
)
from .pauli import Pauli, bloch_of, density_of, sigma
from .protocol import ProtocolConfig, ProtocolResult, analytic_cost, probability_sequence, simulate
from .recovery import (
    RecoverySpec,
    recover,
    recovery_probability,
    recovery_rate,
    synthesize_recovery,
    verify_uniqueness,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatchError",
    "CanonicalForm",
    "CliffordElement",
    "DegenerateConfigError",
    "FormKind",
    "InvalidStateError",
    "MeasuredOutput",
    "NotInteractingError",
    "Pauli",
    "PostselectedCircuit",
    "ProtocolConfig",
    "ProtocolResult",
    "RecoverySpec",
    "StabRecError",
    "ZeroProbabilityError",
    "analytic_cost",
    "bloch_of",
    "canonicalize",
    "census",
    "clifford_equivalent",
    "compose",
    "density_of",
    "enumerate_group",
    "flip_outcome",
    "from_word",
    "gate",
    "invert",
    "is_interacting",
    "matrix_of",
    "outcome_probability",
    "output_state",
    "probability_sequence",
    "recover",
    "recovery_probability",
    "recovery_rate",
    "sigma",
    "simulate",
    "strictly_equivalent",
    "synthesize_recovery",
    "verify_uniqueness",
]

"""Exception types raised by the library."""


class StabRecError(Exception):
    """Base class for domain errors."""


class InvalidStateError(StabRecError, ValueError):
    pass


class ArityMismatchError(StabRecError, ValueError):
    pass


class ZeroProbabilityError(StabRecError):
    """Postselected outcome has probability at or below the zero threshold."""


class NotInteractingError(StabRecError):
    """Operation requires an interacting postselected circuit."""


class DegenerateConfigError(StabRecError, ValueError):
    """Protocol parameters make the success-probability recursion ill-defined."""

class PiercingError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(PiercingError, ValueError):
    pass


class HypothesisViolation(PiercingError, ValueError):
    """The input does not satisfy the premise an algorithm relies on.

    ``witness`` carries the offending indices (a box, or a box and a matching
    member) when there is one.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(PiercingError):
    """An exact search was asked to run beyond its configured size budget."""


class InvariantViolation(PiercingError, AssertionError):
    """A structural guarantee that should always hold failed.

    This signals either a bug or a counterexample to a claimed bound; the
    instance that triggered it should be kept.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

"""Exception hierarchy shared by all modules."""


class DomainError(Exception):
    """Base class for every error raised by this package."""


class CapabilityMissing(DomainError):
    """An operation needs an oracle or decider the basis/element does not carry."""


class PreconditionViolation(DomainError, ValueError):
    """Inputs violate the documented precondition (e.g. a ≺ b does not hold)."""


class FuelExhausted(DomainError):
    """A bounded search ran out of budget where a definite answer was required."""


class ConstructionError(DomainError):
    """An element or basis could not be built from the given data."""


class ValidationError(ConstructionError):
    """User-supplied data (locator, decider, oracle) failed a sampled consistency check."""


class InvariantViolation(DomainError):
    """An internal invariant broke; signals a bug or non-normalized input."""


class ParseError(DomainError, ValueError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)

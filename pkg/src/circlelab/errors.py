"""Exception types shared across the package."""


class CircleLabError(Exception):
    """Base class for all circlelab errors."""


class DomainError(CircleLabError):
    """Argument outside the certified or mathematical domain."""


class ContractError(CircleLabError):
    """Caller violated a precondition (bad envelope, bad schedule, ...)."""


class AccuracyError(CircleLabError):
    """Requested accuracy could not be certified.

    Carries the best available estimate and its error bound.
    """

    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error


class ValidationError(CircleLabError):
    """A validation run failed; the message names the witness."""

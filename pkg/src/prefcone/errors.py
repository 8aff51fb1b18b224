"""Exception hierarchy shared by every module."""

from __future__ import annotations


class PrefConeError(Exception):
    """Base class for all library errors."""


class ParseError(PrefConeError, ValueError):
    """Malformed instance, cortege or point input."""


class DimensionMismatch(PrefConeError, ValueError):
    pass


class CapExceeded(PrefConeError):
    """A configured desk-scale cap (ambient dimension, row count) was exceeded."""


class PreconditionError(PrefConeError):
    """An operation was called on input outside its domain."""


class InvariantViolation(PrefConeError):
    """A structural identity failed to verify.

    This signals a defect in the implementation, never a bad input: every
    identity checked here holds for every validated input.
    """


class InvalidCortege(PrefConeError, ValueError):
    """A functional sequence is not a cortege; ``index`` is 1-based."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index

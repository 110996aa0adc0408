"""Exception types shared across the package."""

from __future__ import annotations


class StrataError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(StrataError, ValueError):
    """Operands live in incompatible spaces."""


class FieldMismatch(StrataError, ValueError):
    """Operands are defined over different fields."""


class NotAnIdealError(StrataError, ValueError):
    """A subspace that was required to be an ideal is not closed under multiplication.

    ``witness`` is a pair ``(a, v)`` with ``v`` in the subspace and the offending
    product ``a*v`` or ``v*a`` outside it.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class MethodInapplicable(StrataError):
    """The requested exact method does not apply to the given input."""


class InconclusiveError(StrataError):
    """A bounded search ran out of budget before reaching a verdict."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class AxiomViolation(StrataError):
    """A cellular-system datum fails one of its defining conditions."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDivisibleError(StrataError):
    """An operation needs every layer algebra to be a division algebra."""


class InternalConsistencyError(StrataError):
    """Two independent computations that must agree did not."""


class ParseError(StrataError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column

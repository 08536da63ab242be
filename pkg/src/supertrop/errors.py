"""Exception types shared across the package."""


class SupertropError(Exception):
    """Base class for all domain errors raised by this package."""


class DomainError(SupertropError, ValueError):
    """An operation was called outside its domain (e.g. inverting zero)."""


class ShapeError(SupertropError, ValueError):
    """Matrix or vector dimensions do not match."""


class SingularityError(DomainError):
    """The operation needs a matrix with nonzero (usually tangible) permanent."""


class WitnessError(DomainError):
    """No witness can exist because the input violates the witness precondition."""


class ParseError(SupertropError, ValueError):
    """Malformed scalar, matrix or word text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class InternalError(SupertropError, RuntimeError):
    """A self-check failed. This always indicates a bug, never bad input."""

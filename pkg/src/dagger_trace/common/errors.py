"""
Exception types raised by the dagger-trace package.
"""


class DaggerTraceError(Exception):
    """Base class for every error raised by this package."""


class RigMismatchError(DaggerTraceError, ValueError):
    """Two operands live over different rigs."""


class DimensionError(DaggerTraceError, ValueError):
    """Matrix or partition dimensions do not fit together."""


class MissingStructureError(DaggerTraceError, ValueError):
    """The rig lacks structure the operation needs (dagger, negatives, inverses)."""


class PreconditionError(DaggerTraceError, ValueError):
    """An input violates the documented precondition of an operation."""


class ElementParseError(DaggerTraceError, ValueError):
    """A rig element literal could not be parsed."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


class SessionError(DaggerTraceError, ValueError):
    """A session document is malformed or a statement cannot be evaluated."""

    def __init__(self, message: str, line: int = 0, column: int = 0, statement: int = -1):
        self.line = line
        self.column = column
        self.statement = statement
        where = []
        if line:
            where.append(f"line {line}, column {column}")
        if statement >= 0:
            where.append(f"statement {statement}")
        if where:
            message = f"{message} ({'; '.join(where)})"
        super().__init__(message)

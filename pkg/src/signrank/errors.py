"""Shared exception types."""


class SignRankError(Exception):
    """Base class for errors raised by this package."""


class ParseError(SignRankError, ValueError):
    """Malformed pattern or matrix text, with position diagnostics."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {col}" if col is not None else "") + ")"
        super().__init__(message + where)


class DimensionError(SignRankError, ValueError):
    """Operands have incompatible shapes or lengths."""


class SingularBlockError(SignRankError, ValueError):
    """The leading block of a Schur complement is not invertible."""


class BudgetExceededError(SignRankError, RuntimeError):
    """A bounded search ran out of its wall-clock budget before deciding."""


class InternalCheckError(SignRankError, RuntimeError):
    """An internal consistency check failed; this indicates a bug, not bad input."""

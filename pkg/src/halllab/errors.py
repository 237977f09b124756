"""Shared exception types."""


class HallLabError(Exception):
    """Base class for errors raised by this package."""


class GraphError(HallLabError, ValueError):
    """Malformed graph input (bad vertex id, self-loop, size violation)."""


class CodecError(HallLabError, ValueError):
    """Unparseable graph text. Carries the offending 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BudgetExceededError(HallLabError):
    """A search or solve hit its node/pivot budget before finishing.

    Deliberately not a ValueError: the input was fine, the work was not
    completed, and callers must be able to tell those apart.
    """

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class ExtractionError(HallLabError):
    """Dense-pair extraction failed; .trace holds the stage diagnostics."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace

"""Exception types shared across the package."""
from __future__ import annotations


class LcnfError(Exception):
    """Base class for errors raised by this package."""


class ParseError(LcnfError):
    """Malformed input file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(LcnfError):
    """A requested object does not exist for this formula.

    Raised when an operation's applicability condition fails, e.g. asking
    for a maximal satisfiable label set when the unlabelled clauses are
    already unsatisfiable.  Distinct from an input error: the input was
    well-formed, the question just has no answer.
    """


class ResourceLimitError(LcnfError):
    """A configured budget (conflicts, subset count, output size) was exceeded."""

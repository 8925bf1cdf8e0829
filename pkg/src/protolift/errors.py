"""Exception types shared across the package."""

from __future__ import annotations


class ProtoliftError(Exception):
    """Base class for all package errors."""


class InvalidMatrix(ProtoliftError):
    """Multiplicity matrix is empty, non-integer, or has negative entries."""


class InvalidNode(ProtoliftError):
    """A node id is out of range for the graph it was used with."""


class SignLengthMismatch(ProtoliftError):
    """Sign vector length does not match the edge count of the graph."""

    def __init__(self, expected: int, got: int, stage: int | None = None):
        self.expected = expected
        self.got = got
        self.stage = stage
        where = f" at stage {stage}" if stage is not None else ""
        super().__init__(
            f"sign vector length {got} != edge count {expected}{where}"
        )


class BudgetExceeded(ProtoliftError):
    """A search or enumeration ran out of its work budget.

    When raised by the stopping-set enumerator, ``partial`` carries the
    (non-exhaustive) report accumulated so far.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class ProtographRejected(ProtoliftError):
    """Protograph failed the design criteria gate; ``verdict`` has details."""

    def __init__(self, verdict):
        self.verdict = verdict
        failed = ", ".join(c.name for c in verdict.criteria if not c.passed)
        super().__init__(f"protograph rejected by criteria: {failed}")


class FormatError(ProtoliftError):
    """A file could not be parsed, or a graph cannot be expressed in the
    requested format (e.g. parallel edges in alist)."""

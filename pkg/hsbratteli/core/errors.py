"""
Exception hierarchy shared by the library and the command line.

Every error carries the process exit code the CLI reports for it:
1 for usage and syntax problems, 2 for semantic and validation failures,
3 when a tractability guard trips.
"""

from typing import Any


class BratteliError(Exception):
    """Base class for all library errors."""

    exit_code: int = 2

    def __init__(self, message: str, details: Any | None = None):
        super().__init__(message)
        self.message = message
        self.details = details


class InvalidArgument(BratteliError):
    """An argument outside the domain of an operation."""


class EmptyBand(BratteliError):
    """A band with no nonzero coefficient."""


class InvalidBand(BratteliError):
    """A band with a negative coefficient or an unusable shape."""


class ZeroBand(BratteliError):
    """Normalisation of a band whose row sum is zero."""


class RuleOverflow(BratteliError):
    """A sequence rule produced a value not allowed at its position."""


class FiniteHorizon(BratteliError):
    """A level beyond the explicit data of a diagram was requested."""


class MissingEdge(BratteliError):
    """A path or odometer uses an edge the diagram does not have."""


class MixedKinds(BratteliError):
    """Adjacent measure vectors of different kinds."""


class NotECS(BratteliError):
    """A windowed subdiagram whose restricted column sums differ."""

    def __init__(self, message: str, witness: tuple[int, int, int]):
        super().__init__(message, details={"level": witness[0], "columns": list(witness[1:])})
        self.witness = witness


class Intractable(BratteliError):
    """An enumeration exceeds the configured guard."""

    exit_code = 3


class InvalidOrder(BratteliError):
    """An edge order that is not a permutation of the level's slots."""


class InvalidKernel(BratteliError):
    """Markov probabilities that are not positive or do not sum to one."""


class InvalidPath(BratteliError):
    """A finite path whose edges do not chain."""


class IdentityViolation(BratteliError):
    """Two independent evaluations of the same quantity disagree."""


class SpecSyntaxError(BratteliError):
    """Malformed spec or vectors text."""

    exit_code = 1

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(
            f"line {line}, column {column}: {message}",
            details={"line": line, "column": column},
        )
        self.line = line
        self.column = column


class SpecSemanticError(BratteliError):
    """Well-formed spec text that violates a diagram invariant."""

    def __init__(self, message: str, line: int | None = None):
        text = message if line is None else f"line {line}: {message}"
        super().__init__(text, details={"line": line} if line is not None else None)
        self.line = line

"""Exception types shared across the engine."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all engine errors."""


class RingMismatchError(AlgebraError):
    """Operands live in different polynomial rings."""


class UnknownVariableError(AlgebraError):
    """A variable name is not part of the ring."""


class NonSquareMatrixError(AlgebraError):
    """Operation requires a square matrix."""


class SingularMatrixError(AlgebraError):
    """Linear solve against a singular matrix.

    Carries the computed determinant (zero) as the witness.
    """

    def __init__(self, message: str = "singular matrix"):
        super().__init__(message)
        self.determinant = 0


class DimensionMismatchError(AlgebraError):
    """Vector or point length does not match the expected dimension."""


class EmptyVarietyError(AlgebraError):
    """Krull dimension requested for the unit ideal (empty variety)."""


class ShapeError(AlgebraError):
    """Input point fails a required coordinate shape."""


class NilpotencyError(AlgebraError):
    """A derivation is not (or not verified) locally nilpotent."""


class ParseError(AlgebraError):
    """Malformed polynomial, ideal or derivation text.

    `line` is 1-based when the source is a multi-line file, else None.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line

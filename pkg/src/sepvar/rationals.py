"""Exact rational scalars and dense rational matrices.

Scalars are `fractions.Fraction` values (arbitrary precision, eagerly
normalized, positive denominator), re-exported as `Rational`.  Matrices
are immutable, row-major tuples of Fractions.  Determinants go through
fraction-free Bareiss elimination on the denominator-cleared integer
matrix; solves use exact Gaussian elimination and are re-checked by
re-multiplication when self checks are on.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import config
from .errors import (
    DimensionMismatchError,
    NonSquareMatrixError,
    SingularMatrixError,
)

Rational = Fraction


def rat(numerator, denominator=None) -> Fraction:
    """Build a Fraction from ints, strings like '3/4', or another Fraction."""
    if denominator is None:
        return Fraction(numerator)
    return Fraction(numerator, denominator)


def rat_arith(a, b, op: str) -> Fraction:
    """Field arithmetic dispatch: op in {'add','sub','mul','div'}.

    Division by zero raises ZeroDivisionError.
    """
    a = Fraction(a)
    b = Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError("unknown op %r" % (op,))


def _bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix, fraction-free Bareiss scheme.

    All intermediate divisions are exact.  Mutates `rows`.
    """
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if pivot is None:
                return 0
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        pkk = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pkk - rik * rk[j]) // prev
            ri[k] = 0
        prev = pkk
    return sign * rows[n - 1][n - 1]


class QMatrix:
    """Immutable exact rational matrix."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ent = tuple(Fraction(e) for e in entries)
        if len(ent) != rows * cols:
            raise DimensionMismatchError(
                "expected %d entries, got %d" % (rows * cols, len(ent))
            )
        self.rows = rows
        self.cols = cols
        self._entries = ent

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise DimensionMismatchError("ragged rows")
            flat.extend(row)
        return cls(r, c, flat)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values: Sequence) -> "QMatrix":
        return cls(len(values), 1, values)

    def entry(self, i: int, j: int) -> Fraction:
        return self._entries[i * self.cols + j]

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entry(i, j)

    def row(self, i: int) -> tuple:
        return self._entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entry(i, j) for i in range(self.rows))

    def transpose(self) -> "QMatrix":
        return QMatrix(
            self.cols,
            self.rows,
            (self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._entries))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix shapes differ")
        return QMatrix(
            self.rows,
            self.cols,
            (a + b for a, b in zip(self._entries, other._entries)),
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix shapes differ")
        return QMatrix(
            self.rows,
            self.cols,
            (a - b for a, b in zip(self._entries, other._entries)),
        )

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionMismatchError("inner dimensions differ")
            out = []
            for i in range(self.rows):
                ri = self.row(i)
                for j in range(other.cols):
                    out.append(sum((ri[k] * other.entry(k, j) for k in range(self.cols)), Fraction(0)))
            return QMatrix(self.rows, other.cols, out)
        return QMatrix(self.rows, self.cols, (Fraction(other) * e for e in self._entries))

    def __rmul__(self, other):
        return self.__mul__(other)

    def det(self) -> Fraction:
        """Exact determinant via integer Bareiss after clearing denominators."""
        if self.rows != self.cols:
            raise NonSquareMatrixError("determinant of a %dx%d matrix" % (self.rows, self.cols))
        n = self.rows
        if n == 0:
            return Fraction(1)
        scale = 1
        int_rows: list[list[int]] = []
        for i in range(n):
            row = self.row(i)
            den = math.lcm(*(e.denominator for e in row))
            scale *= den
            int_rows.append([int(e * den) for e in row])
        return Fraction(_bareiss_det(int_rows), scale)

    def solve(self, rhs: "QMatrix") -> "QMatrix":
        """Solve self * X = rhs exactly.  Raises SingularMatrixError if singular."""
        if self.rows != self.cols:
            raise NonSquareMatrixError("solve needs a square matrix")
        if rhs.rows != self.rows:
            raise DimensionMismatchError("rhs has %d rows, need %d" % (rhs.rows, self.rows))
        n = self.rows
        w = rhs.cols
        aug = [list(self.row(i)) + list(rhs.row(i)) for i in range(n)]
        for k in range(n):
            pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
            if pivot is None:
                raise SingularMatrixError("pivot column %d is zero; det = 0" % k)
            if pivot != k:
                aug[k], aug[pivot] = aug[pivot], aug[k]
            pk = aug[k][k]
            for i in range(n):
                if i == k or aug[i][k] == 0:
                    continue
                factor = aug[i][k] / pk
                row_i = aug[i]
                row_k = aug[k]
                for j in range(k, n + w):
                    row_i[j] -= factor * row_k[j]
        out = []
        for i in range(n):
            pi = aug[i][i]
            out.extend(aug[i][n + j] / pi for j in range(w))
        x = QMatrix(n, w, out)
        if config.self_checks_enabled():
            assert self * x == rhs, "solve postcondition failed"
        return x

    def inverse(self) -> "QMatrix":
        return self.solve(QMatrix.identity(self.rows))

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(e) for e in self.row(i)) for i in range(self.rows)
        )
        return "QMatrix[%s]" % body


def mat_det(m: QMatrix) -> Fraction:
    return m.det()


def mat_solve(m: QMatrix, rhs: QMatrix) -> QMatrix:
    return m.solve(rhs)

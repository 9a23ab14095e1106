"""
Exact dense matrices over the rationals.

Everything is Fraction arithmetic with Gauss-Jordan elimination, normalizing
each pivot row to 1. No floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from chromalg.errors import PreconditionError


def _rref(rows, ncols):
    """
    Reduced row echelon form.

    Args:
        rows: list of lists of Fraction (copied, not modified)
        ncols: number of columns

    Returns:
        (reduced rows, list of pivot columns)
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            if i == r:
                continue
            f = m[i][c]
            if f != 0:
                m[i] = [a - f * b for a, b in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return m, pivots


class RationalMatrix:
    """Row-labelled, column-labelled matrix of Fractions."""

    def __init__(self, rows: Sequence[Sequence], row_labels=None, col_labels=None, ncols=None):
        self.rows = [[Fraction(x) for x in row] for row in rows]
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else len(col_labels or [])
        self.ncols = ncols
        for row in self.rows:
            if len(row) != ncols:
                raise PreconditionError("ragged matrix rows")
        self.row_labels = list(row_labels) if row_labels is not None else list(range(len(self.rows)))
        self.col_labels = list(col_labels) if col_labels is not None else list(range(ncols))
        if len(self.row_labels) != len(self.rows) or len(self.col_labels) != ncols:
            raise PreconditionError("labels do not match matrix dimensions")

    @classmethod
    def identity(cls, n, labels=None):
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(rows, labels, labels, ncols=n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"RationalMatrix({self.nrows}x{self.ncols})"

    def transpose(self) -> "RationalMatrix":
        cols = [[row[j] for row in self.rows] for j in range(self.ncols)]
        return RationalMatrix(cols, self.col_labels, self.row_labels, ncols=self.nrows)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")
        result = []
        for row in self.rows:
            out = [Fraction(0)] * other.ncols
            for k, a in enumerate(row):
                if a == 0:
                    continue
                for j, b in enumerate(other.rows[k]):
                    if b != 0:
                        out[j] += a * b
            result.append(out)
        return RationalMatrix(result, self.row_labels, other.col_labels, ncols=other.ncols)

    def vecmul(self, v: Sequence) -> list:
        """Row vector times matrix."""
        out = [Fraction(0)] * self.ncols
        for a, row in zip(v, self.rows):
            if a == 0:
                continue
            for j, b in enumerate(row):
                if b != 0:
                    out[j] += a * b
        return out

    def rref(self):
        return _rref(self.rows, self.ncols)

    def rank(self) -> int:
        if not self.rows:
            return 0
        # eliminate along the shorter side
        if self.nrows > self.ncols:
            return len(_rref(self.transpose().rows, self.nrows)[1])
        return len(self.rref()[1])

    def solve(self, v: Sequence) -> Optional[list]:
        """
        Coefficients x with sum_i x[i] * row_i = v, or None when v is not in
        the row space. Free coordinates are set to 0.
        """
        if len(v) != self.ncols:
            raise PreconditionError("vector length does not match column count")
        k = self.nrows
        augmented = [
            [self.rows[i][j] for i in range(k)] + [Fraction(v[j])] for j in range(self.ncols)
        ]
        reduced, pivots = _rref(augmented, k + 1)
        if k in pivots:
            return None
        x = [Fraction(0)] * k
        for r, c in enumerate(pivots):
            x[c] = reduced[r][k]
        return x

    def in_span(self, v: Sequence) -> bool:
        if not self.rows:
            return all(Fraction(a) == 0 for a in v)
        return self.solve(v) is not None

    def inverse(self) -> "RationalMatrix":
        n = self.nrows
        if n != self.ncols:
            raise PreconditionError("only square matrices have inverses")
        augmented = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows)]
        reduced, pivots = _rref(augmented, 2 * n)
        if pivots[:n] != list(range(n)):
            raise PreconditionError("matrix is singular")
        inv = [row[n:] for row in reduced]
        return RationalMatrix(inv, self.col_labels, self.row_labels, ncols=n)

    def coloops(self) -> list:
        """
        Indices of rows that are not in the span of the other rows.

        Row i is such a row iff no left-null vector of the matrix has a
        nonzero i-th entry; in the reduced form of the transpose that means
        column i is a pivot column whose pivot row has no other nonzero entry.
        """
        if not self.rows:
            return []
        reduced, pivots = _rref(self.transpose().rows, self.nrows)
        result = []
        for r, c in enumerate(pivots):
            if all(x == 0 for j, x in enumerate(reduced[r]) if j != c):
                result.append(c)
        return result

    def without_row(self, i: int) -> "RationalMatrix":
        rows = self.rows[:i] + self.rows[i + 1:]
        labels = self.row_labels[:i] + self.row_labels[i + 1:]
        return RationalMatrix(rows, labels, self.col_labels, ncols=self.ncols)

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.ncols:
            raise PreconditionError("column counts differ")
        return RationalMatrix(
            self.rows + other.rows, self.row_labels + other.row_labels, self.col_labels, ncols=self.ncols
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def is_upper_unitriangular(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i, row in enumerate(self.rows):
            if row[i] != 1:
                return False
            if any(row[j] != 0 for j in range(i)):
                return False
        return True

    def to_strings(self) -> list:
        return [[f"{x.numerator}/{x.denominator}" for x in row] for row in self.rows]


def rank(M: RationalMatrix) -> int:
    return M.rank()


def in_span(v: Sequence, M: RationalMatrix) -> bool:
    return M.in_span(v)


def solve(M: RationalMatrix, v: Sequence) -> Optional[list]:
    return M.solve(v)

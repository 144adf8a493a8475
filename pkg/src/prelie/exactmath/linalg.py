"""Exact dense matrices and elimination.

Entries may be any exact ring element supporting ``+``, ``-``, ``*`` and
comparison with 0 (Fraction, MultiPoly, RatFunc). Kernel and rank are
computed over Q with fraction-free (Bareiss) elimination; inversion and
determinants use plain Gauss-Jordan over a field (Fraction or RatFunc).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ..errors import DimensionMismatch, SingularMatrix


class Matrix:
    """Immutable rectangular matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero=Fraction(0)) -> Matrix:
        return cls([[zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> Matrix:
        return cls(zip(*columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def map(self, f: Callable) -> Matrix:
        return Matrix([[f(x) for x in r] for r in self.rows])

    def transpose(self) -> Matrix:
        return Matrix(zip(*self.rows)) if self.rows else self

    T = property(transpose)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> Matrix:
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        return self.map(lambda x: x * other)

    def __rmul__(self, scalar):
        return self.map(lambda x: scalar * x)

    def matmul(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if a and b:
                        acc = a * b if acc is None else acc + a * b
                row.append(acc if acc is not None else r[0] * c[0] * 0)
            out.append(row)
        return Matrix(out)

    __matmul__ = matmul

    def apply(self, vector: Sequence) -> tuple:
        if len(vector) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.shape} matrix")
        return tuple(sum((a * v for a, v in zip(r, vector)), 0 * r[0]) for r in self.rows)

    def trace(self):
        if self.nrows != self.ncols:
            raise DimensionMismatch("trace of a non-square matrix")
        acc = self.rows[0][0]
        for i in range(1, self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self) -> int:
        return hash(self.rows)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self})"


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^m given by a basis (rows are basis vectors)."""

    ambient: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)


# -- fraction-free elimination over Q ------------------------------------


def _integer_rows(M: Matrix) -> list[list[int]]:
    rows = []
    for r in M.rows:
        fr = [x if isinstance(x, Fraction) else Fraction(x) for x in r]
        scale = math.lcm(*(x.denominator for x in fr)) if fr else 1
        rows.append([int(x * scale) for x in fr])
    return rows


def bareiss_echelon(M: Matrix) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form of a rational matrix and its pivot columns.

    Rows are first cleared of denominators (row scaling preserves the row
    space). The pivot in each column is the first nonzero entry at or below
    the current row, which makes the output deterministic.
    """
    a = _integer_rows(M)
    nrows, ncols = M.nrows, M.ncols
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                num = piv * row_i[j] - aic * row_r[j]
                q, rem = divmod(num, prev)
                if rem:  # pragma: no cover - Bareiss divisions are exact
                    raise ArithmeticError("inexact Bareiss division")
                row_i[j] = q
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    for i in range(r, nrows):
        a[i] = [0] * ncols
    return a, pivots


def rank(M: Matrix) -> int:
    if not M.nrows or not M.ncols:
        return 0
    return len(bareiss_echelon(M)[1])


def kernel(M: Matrix) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Rank and a basis of the right kernel {v : M v = 0}.

    One basis vector per free column f (in increasing order), normalized by
    v_f = 1 and v_g = 0 for the other free columns.
    """
    ncols = M.ncols
    if not M.nrows:
        return 0, [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    echelon, pivots = bareiss_echelon(M)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            p = pivots[k]
            row = echelon[k]
            s = sum((row[j] * v[j] for j in range(p + 1, ncols) if row[j] and v[j]), Fraction(0))
            v[p] = -s / row[p]
        basis.append(tuple(v))
    return len(pivots), basis


def nullspace(M: Matrix) -> Subspace:
    return Subspace(M.ncols, tuple(kernel(M)[1]))


def stack_systems(*systems: Matrix) -> Matrix:
    """Stack linear systems sharing the same unknowns."""
    rows = []
    ncols = None
    for S in systems:
        if ncols is None:
            ncols = S.ncols
        elif S.ncols != ncols:
            raise DimensionMismatch("systems with different numbers of unknowns")
        rows.extend(S.rows)
    return Matrix(rows, ncols)


# -- field elimination ----------------------------------------------------


def _one_like(x):
    return x * 0 + 1


def invert(g: Matrix) -> Matrix:
    """Inverse over a field (Fraction or RatFunc entries) by Gauss-Jordan."""
    n = g.nrows
    if n != g.ncols:
        raise DimensionMismatch(f"cannot invert a {g.shape} matrix")
    sample = g.rows[0][0]
    one, zero = _one_like(sample), sample * 0
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(g.rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            raise SingularMatrix("matrix has zero determinant")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        inv = one / piv
        a[c] = [x * inv if x else x for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[c])]
    return Matrix([r[n:] for r in a])


def det(g: Matrix):
    """Determinant over a field by Gaussian elimination."""
    n = g.nrows
    if n != g.ncols:
        raise DimensionMismatch(f"determinant of a {g.shape} matrix")
    a = [list(r) for r in g.rows]
    sample = a[0][0]
    result = _one_like(sample)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return sample * 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        piv = a[c][c]
        result = result * piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result

"""Trace invariants c_ij(A) = tr(L(x)^i) tr(L(y)^j) / tr(L(x)^i L(y)^j).

The quotient is an invariant when it does not depend on the generic
elements x, y. We decide that exactly: the denominator must be a nonzero
polynomial and the numerator a constant multiple of it. Whether the
denominator also avoids zeros at nonzero x, y is not decidable here; we
only flag zeros found on a small integer grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, RATIONAL, coordinate_names, left_operator, operator_ring, require_rational
from .exactmath import Matrix, MultiPoly, RatFunc, unipoly_from_multipoly

CONSTANT = "constant"
NONCONSTANT = "nonconstant"
UNDEFINED = "undefined"


@dataclass(frozen=True)
class CInvariant:
    kind: str
    value: Fraction | RatFunc | None = None
    numerator: MultiPoly | None = field(default=None, compare=False, repr=False)
    denominator: MultiPoly | None = field(default=None, compare=False, repr=False)
    denominator_zeros: bool | None = field(default=None, compare=False)

    @property
    def is_constant(self) -> bool:
        return self.kind == CONSTANT

    def __str__(self) -> str:
        if self.kind == CONSTANT:
            return str(self.value)
        return self.kind


def _power(M: Matrix, k: int) -> Matrix:
    result = M
    for _ in range(k - 1):
        result = result @ M
    return result


def _grid_points(n: int, limit: int = 2):
    """Nonzero integer vectors with entries in [-limit, limit]."""
    for v in itertools.product(range(-limit, limit + 1), repeat=n):
        if any(v):
            yield tuple(Fraction(x) for x in v)


def _has_grid_zero(den: MultiPoly, n: int) -> bool:
    names = den.ring.names
    limit = 2 if n <= 3 else 1
    points = list(_grid_points(n, limit))
    for x in points:
        for y in points:
            if not den.evaluate(dict(zip(names, x + y))):
                return True
    return False


def c_invariant(A: Algebra, i: int, j: int) -> CInvariant:
    if i < 1 or j < 1:
        raise ValueError("trace invariant indices must be positive")
    ring = operator_ring(A.dim, A.param)
    Lx = left_operator(A, "x", ring)
    Ly = left_operator(A, "y", ring)
    Lxi, Lyj = _power(Lx, i), _power(Ly, j)
    num = Lxi.trace() * Lyj.trace()
    den = (Lxi @ Lyj).trace()
    if den.is_zero():
        return CInvariant(UNDEFINED, None, num, den)
    xy = coordinate_names(A.dim, "x") + coordinate_names(A.dim, "y")
    den_parts = den.coefficients_in(xy)
    num_parts = num.coefficients_in(xy)
    lead = max(den_parts)
    d_lead = den_parts[lead]
    n_lead = num_parts.get(lead, d_lead * 0)
    # num / den constant in x, y  <=>  num * d_lead == n_lead * den
    if num * d_lead.embed(ring) != den * n_lead.embed(ring):
        return CInvariant(NONCONSTANT, None, num, den)
    if A.coeff_ring == RATIONAL:
        value = n_lead.constant_value() / d_lead.constant_value()
        zeros = _has_grid_zero(den, A.dim)
    else:
        value = RatFunc(unipoly_from_multipoly(n_lead, A.param), unipoly_from_multipoly(d_lead, A.param))
        if value.is_constant():
            value = value.constant_value()
        zeros = None
    return CInvariant(CONSTANT, value, num, den, zeros)


@dataclass(frozen=True)
class TraceObstruction:
    i: int
    j: int
    value_a: Fraction
    value_b: Fraction

    criterion = "c-invariant"

    def describe(self) -> str:
        return f"c[{self.i},{self.j}]: {self.value_a} != {self.value_b}"


def c_compare(A: Algebra, B: Algebra, max_i: int = 4, max_j: int = 4) -> TraceObstruction | None:
    """First (i, j) in lexicographic order where both values are constant and differ."""
    require_rational(A)
    require_rational(B)
    for i in range(1, max_i + 1):
        for j in range(1, max_j + 1):
            ca, cb = c_invariant(A, i, j), c_invariant(B, i, j)
            if ca.is_constant and cb.is_constant and ca.value != cb.value:
                return TraceObstruction(i, j, ca.value, cb.value)
    return None


def c_table(A: Algebra, max_i: int = 4, max_j: int = 4) -> dict[tuple[int, int], CInvariant]:
    return {(i, j): c_invariant(A, i, j) for i in range(1, max_i + 1) for j in range(1, max_j + 1)}

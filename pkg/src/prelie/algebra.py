"""Finite-dimensional algebras given by structure constants.

``A.constants[i][j][k]`` is the coefficient of e_k in e_i * e_j (indices
0-based internally; file formats and labels use 1-based indices). The
coefficients are all of one kind:

* ``"rational"``: ``Fraction``
* ``"param"``: ``MultiPoly`` in a single formal parameter (families)
* ``"ratfunc"``: ``RatFunc`` in the deformation variable t
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, ParametricAlgebra
from .exactmath import Matrix, MultiPoly, PolyRing, RatFunc, Subspace, invert, nullspace, stack_systems

RATIONAL = "rational"
PARAM = "param"
RATFUNC = "ratfunc"


def _kind(c) -> str:
    if isinstance(c, MultiPoly):
        return PARAM
    if isinstance(c, RatFunc):
        return RATFUNC
    return RATIONAL


@dataclass(frozen=True, eq=False)
class Algebra:
    dim: int
    constants: tuple
    label: str | None = field(default=None)
    param: str | None = field(default=None)

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise ValueError("algebra dimension must be positive")
        c = self.constants
        if len(c) != n or any(len(r) != n or any(len(v) != n for v in r) for r in c):
            raise DimensionMismatch(f"structure constants must have shape {n}x{n}x{n}")
        kinds = {_kind(x) for r in c for v in r for x in v}
        if len(kinds) > 1:
            raise TypeError(f"mixed coefficient kinds {sorted(kinds)}")
        kind = kinds.pop()
        if kind == PARAM and self.param is None:
            raise ValueError("parametric constants need a parameter name")
        object.__setattr__(self, "coeff_ring", kind)

    # -- construction ---------------------------------------------------

    @classmethod
    def from_products(cls, dim: int, products: Mapping | Iterable, label: str | None = None,
                      param: str | None = None) -> Algebra:
        """Build from 1-based products.

        ``products`` is either a mapping ``{(i, j): (c_1, ..., c_n)}`` or an
        iterable of ``(i, j, k, c)``. Unlisted products are zero. With
        ``param`` set, coefficients may be ``MultiPoly`` in that parameter;
        plain numbers are then lifted into the parameter ring.
        """
        ring = PolyRing((param,)) if param else None
        zero = ring.zero() if ring else Fraction(0)
        c = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]

        def lift(x):
            if ring is not None:
                return x.embed(ring) if isinstance(x, MultiPoly) else ring.constant(Fraction(x))
            return x if isinstance(x, (MultiPoly, RatFunc)) else Fraction(x)

        if isinstance(products, Mapping):
            items = [(i, j, k + 1, v) for (i, j), vec in products.items() for k, v in enumerate(vec)]
        else:
            items = list(products)
        for i, j, k, v in items:
            if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
                raise DimensionMismatch(f"index ({i},{j},{k}) out of range for dimension {dim}")
            c[i - 1][j - 1][k - 1] = c[i - 1][j - 1][k - 1] + lift(v)
        return cls(dim, _freeze(c), label, param)

    @classmethod
    def zero(cls, dim: int, label: str | None = None) -> Algebra:
        return cls.from_products(dim, {}, label)

    def with_label(self, label: str | None) -> Algebra:
        return Algebra(self.dim, self.constants, label, self.param)

    # -- basic access ---------------------------------------------------

    def structure(self, i: int, j: int) -> tuple:
        """Coordinates of e_i * e_j (0-based)."""
        return self.constants[i][j]

    def coefficients(self) -> Iterable:
        for r in self.constants:
            for v in r:
                yield from v

    def zero_coeff(self):
        for x in self.coefficients():
            return x * 0
        return Fraction(0)

    def is_zero_algebra(self) -> bool:
        return all(not x for x in self.coefficients())

    def same_constants(self, other: Algebra) -> bool:
        return self.dim == other.dim and all(
            a == b for a, b in zip(self.coefficients(), other.coefficients())
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.param == other.param and self.same_constants(other)

    def __hash__(self) -> int:
        return hash((self.dim, tuple(self.coefficients())))

    def nonzero_products(self) -> list[tuple[int, int, int, object]]:
        """1-based (i, j, k, c) for every nonzero constant, lexicographic."""
        n = self.dim
        return [
            (i + 1, j + 1, k + 1, self.constants[i][j][k])
            for i in range(n) for j in range(n) for k in range(n)
            if self.constants[i][j][k]
        ]

    def instantiate(self, value) -> Algebra:
        """Substitute a rational value for the formal parameter."""
        if self.param is None:
            return self
        v = Fraction(value)
        c = [[[x.evaluate({self.param: v}) for x in vec] for vec in row] for row in self.constants]
        return Algebra(self.dim, _freeze(c), self.label)

    def __str__(self) -> str:
        name = self.label or "algebra"
        prods = self.nonzero_products()
        if not prods:
            return f"{name}: zero product (dim {self.dim})"
        terms: dict = {}
        for i, j, k, c in prods:
            terms.setdefault((i, j), []).append(_scaled_basis(c, k))
        body = ", ".join(f"e{i}*e{j} = " + " + ".join(v).replace("+ -", "- ") for (i, j), v in terms.items())
        return f"{name}: {body}"


def _scaled_basis(c, k: int) -> str:
    s = str(c)
    if s == "1":
        return f"e{k}"
    if s == "-1":
        return f"-e{k}"
    if any(ch in s[1:] for ch in "+-"):
        s = f"({s})"
    return f"{s}*e{k}"


def _freeze(c) -> tuple:
    return tuple(tuple(tuple(v) for v in r) for r in c)


def require_rational(A: Algebra) -> None:
    if A.coeff_ring != RATIONAL:
        raise ParametricAlgebra(
            f"{A.label or 'algebra'} has {A.coeff_ring} coefficients; instantiate the parameter {A.param!r} first"
        )


# -- products -------------------------------------------------------------


def product(A: Algebra, u: Sequence, v: Sequence) -> tuple:
    """Bilinear product of coordinate vectors u * v."""
    n = A.dim
    if len(u) != n or len(v) != n:
        raise DimensionMismatch(f"vectors of length {len(u)}, {len(v)} for a {n}-dimensional algebra")
    out = [None] * n
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            uv = u[i] * v[j]
            for k, c in enumerate(A.constants[i][j]):
                if c:
                    term = uv * c
                    out[k] = term if out[k] is None else out[k] + term
    zero = u[0] * v[0] * A.zero_coeff()
    return tuple(zero if x is None else x for x in out)


def basis_vector(n: int, i: int, one=Fraction(1)) -> tuple:
    zero = one * 0
    return tuple(one if k == i else zero for k in range(n))


def _mul_vec(A: Algebra, u: Sequence, j: int) -> list:
    """u * e_j with u a coefficient vector over the algebra's ring."""
    n = A.dim
    out = [A.zero_coeff()] * n
    for i in range(n):
        if u[i]:
            for k in range(n):
                c = A.constants[i][j][k]
                if c:
                    out[k] = out[k] + u[i] * c
    return out


def _vec_mul(A: Algebra, i: int, v: Sequence) -> list:
    """e_i * v."""
    n = A.dim
    out = [A.zero_coeff()] * n
    for j in range(n):
        if v[j]:
            for k in range(n):
                c = A.constants[i][j][k]
                if c:
                    out[k] = out[k] + v[j] * c
    return out


def associator(A: Algebra, i: int, j: int, k: int) -> list:
    """(e_i e_j) e_k - e_i (e_j e_k)."""
    left = _mul_vec(A, A.constants[i][j], k)
    right = _vec_mul(A, i, A.constants[j][k])
    return [a - b for a, b in zip(left, right)]


def _triples(n: int):
    return itertools.product(range(n), repeat=3)


def is_prelie(A: Algebra) -> bool:
    """Associator symmetric in its first two arguments, on all basis triples."""
    n = A.dim
    assoc = {t: associator(A, *t) for t in _triples(n)}
    return all(
        all(not (a - b) for a, b in zip(assoc[(i, j, k)], assoc[(j, i, k)]))
        for i, j, k in _triples(n) if i < j
    )


def is_associative(A: Algebra) -> bool:
    return all(all(not x for x in associator(A, *t)) for t in _triples(A.dim))


def is_commutative(A: Algebra) -> bool:
    n = A.dim
    return all(
        all(not (a - b) for a, b in zip(A.constants[i][j], A.constants[j][i]))
        for i in range(n) for j in range(i + 1, n)
    )


def is_novikov(A: Algebra) -> bool:
    """Pre-Lie and right-commutative: (x y) z = (x z) y."""
    if not is_prelie(A):
        return False
    n = A.dim
    for i, j, k in _triples(n):
        if j >= k:
            continue
        a = _mul_vec(A, A.constants[i][j], k)
        b = _mul_vec(A, A.constants[i][k], j)
        if any(x - y for x, y in zip(a, b)):
            return False
    return True


def is_lie(A: Algebra) -> bool:
    """Antisymmetric products satisfying the Jacobi identity on basis triples."""
    n = A.dim
    for i in range(n):
        for j in range(i, n):
            if any(a + b for a, b in zip(A.constants[i][j], A.constants[j][i])):
                return False
    for i, j, k in _triples(n):
        total = [A.zero_coeff()] * n
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            # [[e_a, e_b], e_c]
            term = _mul_vec(A, A.constants[a][b], c)
            total = [x + y for x, y in zip(total, term)]
        if any(total):
            return False
    return True


def associated_lie(A: Algebra) -> Algebra:
    """The commutator algebra [x, y] = x y - y x."""
    n = A.dim
    c = [[[A.constants[i][j][k] - A.constants[j][i][k] for k in range(n)] for j in range(n)]
         for i in range(n)]
    label = f"g({A.label})" if A.label else None
    return Algebra(n, _freeze(c), label, A.param)


def is_abelian_lie(A: Algebra) -> bool:
    return associated_lie(A).is_zero_algebra()


# -- generic elements and multiplication operators -----------------------


def operator_ring(n: int, param: str | None = None) -> PolyRing:
    """Q[x_1..x_n, y_1..y_n (, param)] for two generic elements."""
    names = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
    if param:
        names.append(param)
    return PolyRing(names)


def coordinate_names(n: int, slot: str) -> list[str]:
    return [f"{slot}{i}" for i in range(1, n + 1)]


def _lift_constant(ring: PolyRing, c) -> MultiPoly:
    if isinstance(c, MultiPoly):
        return c.embed(ring)
    if isinstance(c, RatFunc):
        raise TypeError("multiplication operators need rational or polynomial constants")
    return ring.constant(c)


def generic_element(A: Algebra, slot: str = "x", ring: PolyRing | None = None) -> tuple:
    ring = ring or operator_ring(A.dim, A.param)
    return tuple(ring.gen(name) for name in coordinate_names(A.dim, slot))


def left_operator(A: Algebra, slot: str = "x", ring: PolyRing | None = None) -> Matrix:
    """Matrix of y -> x*y for the generic element x; entry (k, j) = sum_i x_i c_ij^k."""
    ring = ring or operator_ring(A.dim, A.param)
    xs = generic_element(A, slot, ring)
    n = A.dim
    rows = []
    for k in range(n):
        row = []
        for j in range(n):
            acc = ring.zero()
            for i in range(n):
                c = A.constants[i][j][k]
                if c:
                    acc = acc + xs[i] * _lift_constant(ring, c)
            row.append(acc)
        rows.append(row)
    return Matrix(rows)


def right_operator(A: Algebra, slot: str = "x", ring: PolyRing | None = None) -> Matrix:
    """Matrix of y -> y*x; entry (k, i) = sum_j x_j c_ij^k."""
    ring = ring or operator_ring(A.dim, A.param)
    xs = generic_element(A, slot, ring)
    n = A.dim
    rows = []
    for k in range(n):
        row = []
        for i in range(n):
            acc = ring.zero()
            for j in range(n):
                c = A.constants[i][j][k]
                if c:
                    acc = acc + xs[j] * _lift_constant(ring, c)
            row.append(acc)
        rows.append(row)
    return Matrix(rows)


# -- annihilators and center ---------------------------------------------


def _left_annihilator_system(A: Algebra) -> Matrix:
    # x * e_j = 0: rows (j, k), unknowns x_i
    n = A.dim
    return Matrix([[A.constants[i][j][k] for i in range(n)] for j in range(n) for k in range(n)])


def _right_annihilator_system(A: Algebra) -> Matrix:
    # e_i * x = 0: rows (i, k), unknowns x_j
    n = A.dim
    return Matrix([[A.constants[i][j][k] for j in range(n)] for i in range(n) for k in range(n)])


def left_annihilator(A: Algebra) -> Subspace:
    """{x : x * A = 0}."""
    require_rational(A)
    return nullspace(_left_annihilator_system(A))


def right_annihilator(A: Algebra) -> Subspace:
    """{x : A * x = 0}."""
    require_rational(A)
    return nullspace(_right_annihilator_system(A))


def center(A: Algebra) -> Subspace:
    require_rational(A)
    return nullspace(stack_systems(_left_annihilator_system(A), _right_annihilator_system(A)))


# -- base change -----------------------------------------------------------


def change_basis(A: Algebra, h: Matrix, label: str | None = None) -> Algebra:
    """Structure constants of the same product in the basis f_i = h e_i.

    The new constants are h^{-1} (h e_i * h e_j). In terms of the group
    action (g . mu)(x, y) = g mu(g^{-1} x, g^{-1} y) this is the action of
    g = h^{-1}.
    """
    n = A.dim
    if h.shape != (n, n):
        raise DimensionMismatch(f"{h.shape} base change for a {n}-dimensional algebra")
    hinv = invert(h)
    cols = h.columns()
    c = []
    for i in range(n):
        row = []
        for j in range(n):
            p = product(A, cols[i], cols[j])
            row.append(hinv.apply(p))
        c.append(row)
    return Algebra(n, _freeze(c), label, A.param)

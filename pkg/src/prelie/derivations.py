"""Derivations, (alpha, beta, gamma)-derivations and orbit dimension."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, basis_vector, product, require_rational
from .exactmath import Matrix, kernel


@dataclass(frozen=True)
class DerivationWeights:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def parse(cls, text: str) -> DerivationWeights:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated weights, got {text!r}")
        return cls(*(Fraction(p) for p in parts))

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma))

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta},{self.gamma})"


ORDINARY = DerivationWeights(1, 1, 1)

# No canonical sample set exists; these cover the ordinary case, the
# one-sided variants and two asymmetric scalings.
DEFAULT_WEIGHTS = (
    DerivationWeights(1, 1, 1),
    DerivationWeights(1, 1, 0),
    DerivationWeights(1, 0, 1),
    DerivationWeights(2, 1, 1),
    DerivationWeights(0, 1, 1),
    DerivationWeights(1, 2, 0),
)


@dataclass(frozen=True)
class DerivationSpace:
    weights: DerivationWeights
    basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def derivation_system(A: Algebra, w: DerivationWeights) -> Matrix:
    """The n^3 x n^2 matrix M with ker M = Der_(alpha,beta,gamma)(A).

    Row (i, j, k) in lexicographic order encodes
    sum_l alpha c_ij^l d_kl - beta c_lj^k d_li - gamma c_il^k d_lj = 0,
    where D(e_i) = sum_l d_li e_l. Unknown d_ab sits in column b*n + a
    (the columns of D stacked).
    """
    require_rational(A)
    n = A.dim
    c = A.constants
    alpha, beta, gamma = w
    rows = []
    for i, j, k in itertools.product(range(n), repeat=3):
        row = [Fraction(0)] * (n * n)
        for l in range(n):
            row[l * n + k] += alpha * c[i][j][l]
            row[i * n + l] -= beta * c[l][j][k]
            row[j * n + l] -= gamma * c[i][l][k]
        rows.append(row)
    return Matrix(rows, n * n)


def _vector_to_matrix(v, n: int) -> Matrix:
    return Matrix([[v[b * n + a] for b in range(n)] for a in range(n)])


def generalized_derivations(A: Algebra, w: DerivationWeights) -> DerivationSpace:
    n = A.dim
    M = derivation_system(A, w)
    _, basis = kernel(M)
    return DerivationSpace(w, tuple(_vector_to_matrix(v, n) for v in basis))


def satisfies_weights(A: Algebra, D: Matrix, w: DerivationWeights, u=None, v=None) -> bool:
    """alpha D(u v) == beta D(u) v + gamma u D(v), on basis pairs by default."""
    n = A.dim
    pairs = (
        [(u, v)] if u is not None
        else [(basis_vector(n, i), basis_vector(n, j)) for i in range(n) for j in range(n)]
    )
    for x, y in pairs:
        lhs = [w.alpha * z for z in D.apply(product(A, x, y))]
        r1 = product(A, D.apply(x), y)
        r2 = product(A, x, D.apply(y))
        rhs = [w.beta * a + w.gamma * b for a, b in zip(r1, r2)]
        if lhs != rhs:
            return False
    return True


def der(A: Algebra) -> DerivationSpace:
    """Ordinary derivations, cross-checked against D(xy) = D(x)y + xD(y)."""
    space = generalized_derivations(A, ORDINARY)
    for D in space.basis:
        if not satisfies_weights(A, D, ORDINARY):  # pragma: no cover - internal consistency
            raise AssertionError(f"kernel element {D} is not a derivation")
    return space


def orbit_dim(A: Algebra) -> int:
    """dim GL_n-orbit = n^2 - dim Der(A)."""
    return A.dim**2 - der(A).dim

"""Degenerations: the GL_n action over Q(t), limits at t = 0, witness
verification, the battery of necessary criteria and Hasse diagrams.

Convention. A witness stores an invertible matrix over Q(t). The engine
turns it into a basis-change matrix h and computes the product in the
basis f_i = h e_i; for g = h^{-1} this is (g . mu)(x, y) = g mu(g^{-1}x, g^{-1}y).
With ``inverse_given`` the stored matrix is g^{-1} itself, so h is the
stored matrix. An optional constant ``relabel`` matrix C is applied after
that (h -> h C); it moves a limit written in another basis of the same
algebra onto the catalog's standard basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import (
    Algebra,
    RATFUNC,
    _freeze,
    center,
    change_basis,
    is_commutative,
    is_prelie,
    left_annihilator,
    require_rational,
    right_annihilator,
)
from .derivations import DEFAULT_WEIGHTS, DerivationWeights, generalized_derivations, orbit_dim
from .errors import DimensionMismatch, InconsistentInput, PrelieError
from .exactmath import Diverges, Matrix, RatFunc, as_ratfunc, invert, ratfunc_limit_at_zero
from .identities import IdentityObstruction, identity_basis, residual, _word_set
from .traceinv import TraceObstruction, c_invariant

T = RatFunc.var_power(1)


def _as_ratfunc_matrix(M: Matrix) -> Matrix:
    return M.map(as_ratfunc)


@dataclass(frozen=True)
class Witness:
    matrix: Matrix
    inverse_given: bool = True
    relabel: Matrix | None = None
    params: Mapping[str, Fraction] = field(default_factory=dict)
    note: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "matrix", _as_ratfunc_matrix(self.matrix))
        if self.relabel is not None:
            object.__setattr__(self, "relabel", _as_ratfunc_matrix(self.relabel))
            if self.relabel.shape != self.matrix.shape:
                raise DimensionMismatch("relabel matrix must match the witness shape")
        object.__setattr__(self, "params", {k: Fraction(v) for k, v in dict(self.params).items()})

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def basis_matrix(self) -> Matrix:
        """The h with new basis f_i = h e_i; raises SingularMatrix."""
        h = self.matrix if self.inverse_given else invert(self.matrix)
        if self.relabel is not None:
            h = h @ self.relabel
        return h

    def compose(self, first: Witness) -> Witness:
        """The witness for ``self`` applied after ``first``: act(act(A, first), self)."""
        return Witness(first.basis_matrix() @ self.basis_matrix())

    def __str__(self) -> str:
        flag = "g_t^-1" if self.inverse_given else "g_t"
        text = f"{flag} = {self.matrix}"
        if self.relabel is not None:
            text += f", relabel {self.relabel}"
        return text


def identity_witness(n: int) -> Witness:
    return Witness(Matrix.identity(n, T ** 0, T * 0))


def scaling_witness(n: int) -> Witness:
    """g_t^{-1} = t E_n; multiplies every structure constant by t."""
    return Witness(Matrix.identity(n, T, T * 0))


def to_ratfunc(A: Algebra) -> Algebra:
    if A.coeff_ring == RATFUNC:
        return A
    require_rational(A)
    c = [[[as_ratfunc(x) for x in v] for v in r] for r in A.constants]
    return Algebra(A.dim, _freeze(c), A.label)


def act(A: Algebra, w: Witness) -> Algebra:
    """The algebra g_t . A over Q(t)."""
    if w.dim != A.dim:
        raise DimensionMismatch(f"{w.dim}x{w.dim} witness for a {A.dim}-dimensional algebra")
    return change_basis(to_ratfunc(A), w.basis_matrix())


def limit(A_t: Algebra):
    """Componentwise limit at t = 0; ``Diverges`` if some constant has a pole."""
    c = []
    for r in A_t.constants:
        row = []
        for v in r:
            vec = []
            for x in v:
                x0 = ratfunc_limit_at_zero(as_ratfunc(x))
                if x0 is Diverges:
                    return Diverges
                vec.append(x0)
            row.append(vec)
        c.append(row)
    A0 = Algebra(A_t.dim, _freeze(c))
    if not is_prelie(A0) and is_prelie(A_t):  # pragma: no cover - closedness of the variety
        raise PrelieError("limit of a pre-Lie family is not pre-Lie")
    return A0


def verify_witness(A: Algebra, B: Algebra, w: Witness) -> bool:
    require_rational(A)
    require_rational(B)
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions {A.dim} and {B.dim} differ")
    L = limit(act(A, w))
    return L is not Diverges and L.same_constants(B)


# -- criteria -------------------------------------------------------------


@dataclass(frozen=True)
class CriteriaConfig:
    word_degrees: tuple = ((1, 0), (0, 1), (1, 1))
    max_i: int = 4
    max_j: int = 4
    weights: tuple[DerivationWeights, ...] = DEFAULT_WEIGHTS


DEFAULT_CONFIG = CriteriaConfig()


@dataclass(frozen=True)
class DimensionObstruction:
    """A semicontinuity inequality value_a <= value_b (or > for orbits) that fails."""

    criterion: str
    value_a: int
    value_b: int
    relation: str = "<="

    def describe(self) -> str:
        return f"{self.criterion}: {self.value_a} {self.relation} {self.value_b} fails"


@dataclass(frozen=True)
class CommutativityObstruction:
    criterion = "commutative"

    def describe(self) -> str:
        return "commutative: source is commutative, target is not"


class Profile:
    """Lazily computed invariants of one rational algebra."""

    def __init__(self, A: Algebra, config: CriteriaConfig = DEFAULT_CONFIG):
        require_rational(A)
        self.algebra = A
        self.config = config
        self._cache: dict = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def orbit_dim(self) -> int:
        return self._get("orbit", lambda: orbit_dim(self.algebra))

    def subspace_dims(self) -> dict[str, int]:
        return self._get("subspaces", lambda: {
            "dim L": left_annihilator(self.algebra).dim,
            "dim R": right_annihilator(self.algebra).dim,
            "dim center": center(self.algebra).dim,
        })

    def der_dim(self, w: DerivationWeights) -> int:
        return self._get(("der", w), lambda: generalized_derivations(self.algebra, w).dim)

    def identities(self, spec) -> list:
        key = ("ids", spec if isinstance(spec, tuple) else tuple(map(str, spec)))
        return self._get(key, lambda: identity_basis(self.algebra, _word_set(spec)))

    def c(self, i: int, j: int):
        return self._get(("c", i, j), lambda: c_invariant(self.algebra, i, j))

    @property
    def commutative(self) -> bool:
        return self._get("comm", lambda: is_commutative(self.algebra))


def _profile(X, config) -> Profile:
    return X if isinstance(X, Profile) else Profile(X, config)


def obstructions(A, B, config: CriteriaConfig = DEFAULT_CONFIG) -> list:
    """Every failing necessary condition for A -> B, in battery order."""
    pa, pb = _profile(A, config), _profile(B, config)
    if pa.algebra.dim != pb.algebra.dim:
        raise DimensionMismatch("degenerations preserve dimension")
    found = []
    if not pa.orbit_dim > pb.orbit_dim:
        found.append(DimensionObstruction("orbit dim", pa.orbit_dim, pb.orbit_dim, ">"))
    sa, sb = pa.subspace_dims(), pb.subspace_dims()
    for name in sa:
        if sa[name] > sb[name]:
            found.append(DimensionObstruction(name, sa[name], sb[name]))
    for w in config.weights:
        da, db = pa.der_dim(w), pb.der_dim(w)
        if da > db:
            found.append(DimensionObstruction(f"dim Der{w}", da, db))
    for spec in config.word_degrees:
        hit = None
        for T_ in pa.identities(spec):
            res = residual(pb.algebra, T_)
            if not res.is_zero():
                hit = IdentityObstruction(T_, T_.multidegree, res)
                break
        if hit is not None:
            found.append(hit)
    pairs = itertools.product(range(1, config.max_i + 1), range(1, config.max_j + 1))
    c_hit = next((
        (i, j) for i, j in pairs
        if pa.c(i, j).is_constant and pb.c(i, j).is_constant and pa.c(i, j).value != pb.c(i, j).value
    ), None)
    if c_hit is not None:
        i, j = c_hit
        found.append(TraceObstruction(i, j, pa.c(i, j).value, pb.c(i, j).value))
    if pa.commutative and not pb.commutative:
        found.append(CommutativityObstruction())
    return found


VERIFIED = "verified"
RULED_OUT = "ruled_out"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class DegenerationVerdict:
    status: str
    witness: Witness | None = None
    reasons: tuple = ()
    via: tuple[str, ...] = ()

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    @property
    def ruled_out(self) -> bool:
        return self.status == RULED_OUT

    def describe(self) -> str:
        if self.status == VERIFIED:
            if self.witness is not None:
                return f"Verified by {self.witness}"
            return "Verified via " + " -> ".join(self.via)
        if self.status == RULED_OUT:
            return "RuledOut\n" + "\n".join(f"  {r.describe()}" for r in self.reasons)
        return "Undetermined"


def criteria_battery(A, B, config: CriteriaConfig = DEFAULT_CONFIG,
                     witnesses: Iterable[Witness] = ()) -> DegenerationVerdict:
    pa, pb = _profile(A, config), _profile(B, config)
    reasons = obstructions(pa, pb, config)
    verified = next((w for w in witnesses if verify_witness(pa.algebra, pb.algebra, w)), None)
    if reasons:
        if verified is not None:
            raise InconsistentInput(
                f"witness {verified} verifies {pa.algebra.label} -> {pb.algebra.label}, "
                f"but {reasons[0].describe()}"
            )
        return DegenerationVerdict(RULED_OUT, reasons=tuple(reasons))
    if verified is not None:
        return DegenerationVerdict(VERIFIED, witness=verified)
    return DegenerationVerdict(UNDETERMINED)


# -- Hasse diagrams ----------------------------------------------------------


@dataclass
class HasseGraph:
    nodes: list[tuple[str, int]]
    edges: list[tuple[str, str]]
    relation: set[tuple[str, str]]
    verdicts: dict[tuple[str, str], DegenerationVerdict]

    def orbit_dims(self) -> dict[str, int]:
        return dict(self.nodes)

    def undetermined(self) -> list[tuple[str, str]]:
        return [p for p, v in self.verdicts.items() if v.status == UNDETERMINED]

    def to_dot(self, name: str = "degenerations") -> str:
        order = {label: k for k, (label, _) in enumerate(self.nodes)}
        lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
        for d in sorted({d for _, d in self.nodes}, reverse=True):
            members = " ".join(f'"{label}";' for label, dd in self.nodes if dd == d)
            lines.append(f"  {{ rank=same; {members} }}  // orbit dim {d}")
        for label, d in self.nodes:
            lines.append(f'  "{label}" [label="{label}\\n{d}"];')
        for a, b in sorted(self.edges, key=lambda e: (order[e[0]], order[e[1]])):
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _closure(labels: Sequence[str], edges: Iterable[tuple[str, str]]) -> set[tuple[str, str]]:
    rel = set(edges)
    for k in labels:
        for i in labels:
            if (i, k) in rel:
                for j in labels:
                    if (k, j) in rel:
                        rel.add((i, j))
    return rel


def _path(rel_direct: set, a: str, b: str, labels: Sequence[str]) -> tuple[str, ...]:
    """A shortest chain of direct witnesses from a to b."""
    frontier = [(a,)]
    seen = {a}
    while frontier:
        nxt = []
        for chain in frontier:
            for c in labels:
                if (chain[-1], c) in rel_direct and c not in seen:
                    if c == b:
                        return chain + (c,)
                    seen.add(c)
                    nxt.append(chain + (c,))
        frontier = nxt
    return ()


def hasse(algebras: Sequence[Algebra], witnesses: Iterable[tuple[str, str, Witness]],
          config: CriteriaConfig = DEFAULT_CONFIG) -> HasseGraph:
    """Degeneration order generated by verified witnesses and transitivity."""
    labels = [A.label for A in algebras]
    if None in labels or len(set(labels)) != len(labels):
        raise ValueError("Hasse nodes need distinct labels")
    profiles = {A.label: Profile(A, config) for A in algebras}
    by_pair: dict[tuple[str, str], list[Witness]] = {}
    for a, b, w in witnesses:
        if a not in profiles or b not in profiles:
            continue
        if not verify_witness(profiles[a].algebra, profiles[b].algebra, w):
            raise InconsistentInput(f"witness {w} does not verify {a} -> {b}")
        by_pair.setdefault((a, b), []).append(w)
    direct = {p for p in by_pair if p[0] != p[1]}
    rel = _closure(labels, direct)
    for a, b in rel:
        if a == b:
            raise InconsistentInput(f"cycle through {a}: degenerations are not antisymmetric")
        if profiles[a].orbit_dim <= profiles[b].orbit_dim:
            raise InconsistentInput(f"{a} -> {b} does not lower the orbit dimension")

    verdicts = {}
    for a, b in itertools.permutations(labels, 2):
        if profiles[a].algebra.dim != profiles[b].algebra.dim:
            continue
        v = criteria_battery(profiles[a], profiles[b], config, by_pair.get((a, b), ()))
        if (a, b) in rel:
            if v.ruled_out:
                raise InconsistentInput(
                    f"{a} -> {b} follows from witnesses but {v.reasons[0].describe()}"
                )
            if not v.verified:
                v = DegenerationVerdict(VERIFIED, via=_path(direct, a, b, labels))
        verdicts[(a, b)] = v

    covering = [
        (a, b) for a, b in rel
        if not any((a, c) in rel and (c, b) in rel for c in labels if c not in (a, b))
    ]
    order = {label: k for k, label in enumerate(labels)}
    covering.sort(key=lambda e: (order[e[0]], order[e[1]]))
    nodes = [(label, profiles[label].orbit_dim) for label in labels]
    return HasseGraph(nodes, covering, rel, verdicts)

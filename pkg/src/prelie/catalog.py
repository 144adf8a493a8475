"""Built-in data: the pre-Lie algebras of dimension 1 and 2 and the
degeneration witnesses between them.

Family members are addressed as ``B1(-1/2)``; ``load("B1")`` without a value
returns the family with a formal parameter (``a`` for B1, ``b`` for B2).

Witness matrices are kept as printed (g_t^{-1}). Where the printed matrix
does not land on the standard basis of the target, the entry also records
the orientation or the constant relabelling that does; see ``note``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import Algebra
from .degeneration import Witness, scaling_witness
from .errors import ForbiddenParameter, UnknownLabel
from .exactmath import Matrix, PolyRing, RatFunc

t = RatFunc.var_power(1)
SWAP = Matrix([[0, 1], [1, 0]])

DEFAULT_ALPHAS = (Fraction(-2), Fraction(0), Fraction(3))
DEFAULT_BETAS = (Fraction(-1), Fraction(2))
# every special value mentioned for the families plus generic points
SAMPLE_ALPHAS = tuple(map(Fraction, ("-2", "-1", "-1/2", "0", "3")))
SAMPLE_BETAS = tuple(map(Fraction, ("-1", "1", "2")))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    products: Callable  # param value -> iterable of 1-based (i, j, k, c)
    der_dim: Callable[[object], int]
    commutative: Callable[[object], bool]
    associative: Callable[[object], bool]
    novikov: Callable[[object], bool]
    param: str | None = None
    forbidden: tuple = ()

    @property
    def lie_type(self) -> str:
        return "abelian" if self.name.startswith(("A", "P")) else "r2"

    def build(self, value=None) -> Algebra:
        if self.param is None:
            if value is not None:
                raise ValueError(f"{self.name} takes no parameter")
            return Algebra.from_products(self.dim, self.products(None), self.name)
        if value is None:
            a = PolyRing((self.param,)).gen(self.param)
            return Algebra.from_products(self.dim, self.products(a), self.name, param=self.param)
        value = Fraction(value)
        if value in self.forbidden:
            raise ForbiddenParameter(f"{self.name}({value}) is excluded from the family")
        return Algebra.from_products(self.dim, self.products(value), family_label(self.name, value))


def _const(v):
    return lambda _=None: v


def family_label(name: str, value) -> str:
    return f"{name}({Fraction(value)})"


ENTRIES: dict[str, CatalogEntry] = {}


def _entry(name, dim, products, der, comm=False, assoc=False, nov=False, **kw):
    wrap = lambda x: x if callable(x) else _const(x)  # noqa: E731
    ENTRIES[name] = CatalogEntry(name, dim, wrap(products), wrap(der), wrap(comm), wrap(assoc),
                                 wrap(nov), **kw)


_entry("P1", 1, [], 1, comm=True, assoc=True, nov=True)
_entry("P2", 1, [(1, 1, 1, 1)], 0, comm=True, assoc=True, nov=True)
_entry("A1", 2, [], 4, comm=True, assoc=True, nov=True)
_entry("A2", 2, [(1, 1, 1, 1)], 1, comm=True, assoc=True, nov=True)
_entry("A3", 2, [(1, 1, 1, 1), (2, 2, 2, 1)], 0, comm=True, assoc=True, nov=True)
_entry("A4", 2, [(1, 2, 1, 1), (2, 1, 1, 1), (2, 2, 2, 1)], 1, comm=True, assoc=True, nov=True)
_entry("A5", 2, [(2, 2, 1, 1)], 2, comm=True, assoc=True, nov=True)
_entry("B1", 2, lambda a: [(2, 1, 1, -1), (2, 2, 2, a)],
       lambda a: 2 if a == -1 else 1, assoc=lambda a: a == -1,
       nov=lambda a: a == 0, param="a")  # B1(0) is B2(0)
_entry("B2", 2, lambda b: [(1, 2, 1, b), (2, 1, 1, b - 1), (2, 2, 2, b)],
       lambda b: 2 if b == 1 else 1, assoc=lambda b: b == 1, nov=True, param="b",
       forbidden=(Fraction(0),))
_entry("B3", 2, [(2, 1, 1, -1), (2, 2, 1, 1), (2, 2, 2, -1)], 1)
_entry("B4", 2, [(1, 1, 2, 1), (2, 1, 1, -1), (2, 2, 2, -2)], 0)
_entry("B5", 2, [(1, 2, 1, 1), (2, 2, 1, 1), (2, 2, 2, 1)], 1, nov=True)

_LABEL = re.compile(r"^\s*([A-Z]\d+)\s*(?:\(\s*([-+]?\d+(?:/\d+)?)\s*\))?\s*$")


def parse_label(label: str) -> tuple[str, Fraction | None]:
    m = _LABEL.match(label)
    if not m or m.group(1) not in ENTRIES:
        raise UnknownLabel(f"unknown catalog label {label!r}")
    value = Fraction(m.group(2)) if m.group(2) else None
    return m.group(1), value


def entry(label: str) -> CatalogEntry:
    return ENTRIES[parse_label(label)[0]]


def load(label: str, params: dict | None = None) -> Algebra:
    """The catalog algebra ``label``, e.g. ``"B4"``, ``"B1(-1/2)"`` or ``("B2", {"b": 2})``."""
    name, value = parse_label(label)
    e = ENTRIES[name]
    if params:
        keys = {e.param, {"a": "alpha", "b": "beta"}.get(e.param or "")}
        extra = [k for k in params if k not in keys]
        if e.param is None or extra:
            raise ValueError(f"{name} has no parameter {extra or list(params)}")
        value = Fraction(next(iter(params.values())))
    return e.build(value)


def expected(label: str) -> dict:
    """Tabulated invariants of a (rational) catalog member."""
    name, value = parse_label(label)
    e = ENTRIES[name]
    return {
        "der": e.der_dim(value),
        "commutative": e.commutative(value),
        "associative": e.associative(value),
        "novikov": e.novikov(value),
        "lie": e.lie_type,
    }


# -- witnesses -------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogWitness:
    source: str
    target: str
    witness: Witness
    template: str

    def __iter__(self):
        return iter((self.source, self.target, self.witness))


def _m(rows) -> Matrix:
    return Matrix(rows)


def _fixed_templates() -> list[tuple[str, str, Witness, str]]:
    one, zero = t**0, t * 0
    return [
        ("A3", "A2", Witness(_m([[one, zero], [t**2, t]])), "A3-A2"),
        ("A3", "A4", Witness(_m([[one, zero], [one, t]]), relabel=SWAP,
                             note="limit lands with e1, e2 exchanged"), "A3-A4"),
        ("A3", "A5", Witness(_m([[t**2, t], [t**2, -t]]),
                             note="printed [[2t^2,2t],[0,1]] has no finite limit equal to A5; replaced"),
         "A3-A5"),
        ("B4", "B1(-2)", Witness(_m([[t, zero], [t, one]])), "B4-B1"),
        ("B4", "B2(-1)", Witness(_m([[Fraction(1, 2) * one, zero], [Fraction(-1, 2) * one, t]]),
                                 relabel=_m([[0, -2], [1, 0]]),
                                 note="limit lands in the basis (e2, -2 e1)"), "B4-B2"),
        ("B4", "A5", Witness(_m([[2 * t, zero], [t, 3 * t**2]]), relabel=SWAP,
                             note="limit lands with e1, e2 exchanged"), "B4-A5"),
        ("A2", "A5", Witness(_m([[t, zero], [one, -t]]), relabel=SWAP,
                             note="limit lands with e1, e2 exchanged"), "A2-A5"),
        ("A4", "A5", Witness(_m([[t, one], [zero, t]]),
                             note="printed [[t,0],[1,t]] is the transpose"), "A4-A5"),
        ("B3", "A5", Witness(_m([[t**-2, zero], [zero, t**-1]]), inverse_given=False,
                             note="matrix is g_t, not its inverse"), "B3-A5"),
        ("B3", "B1(-1)", Witness(_m([[-t, zero], [zero, one]]), inverse_given=False,
                                 note="matrix is g_t, not its inverse"), "B3-B1"),
        ("B5", "A5", Witness(_m([[t**-2, zero], [zero, t**-1]]), inverse_given=False,
                             note="matrix is g_t, not its inverse"), "B5-A5"),
        ("B5", "B2(1)", Witness(_m([[t**-1, zero], [zero, one]])), "B5-B2"),
    ]


def printed_a3_a5() -> Witness:
    """The A3 -> A5 matrix exactly as printed; it does not verify (kept for audits)."""
    return Witness(_m([[2 * t**2, 2 * t], [t * 0, t**0]]))


def family_witness(name: str, value) -> Witness:
    """B1(a) -> A5 for a != -1 and B2(b) -> A5 for b != 1."""
    v = Fraction(value)
    one, zero = t**0, t * 0
    if name == "B1":
        if v == -1:
            raise ForbiddenParameter("B1(-1) does not degenerate to A5")
        return Witness(_m([[one, zero], [t, t**2 * (v + 1)]]), relabel=SWAP, params={"a": v},
                       note="limit is e1*e1 = e2; exchange e1, e2")
    if name == "B2":
        if v == 1:
            raise ForbiddenParameter("B2(1) does not degenerate to A5")
        return Witness(_m([[one, zero], [t, t**2 * (v - 1)]]), relabel=_m([[0, 1], [-1, 0]]),
                       params={"b": v}, note="limit is e1*e1 = -e2; use the basis (-e2, e1)")
    raise UnknownLabel(name)


def witnesses(alphas: Iterable = DEFAULT_ALPHAS, betas: Iterable = DEFAULT_BETAS,
              scaling: Iterable[str] = ()) -> list[CatalogWitness]:
    """Transcribed witnesses, families instantiated at the given values,
    plus the scaling witness X -> A1 for every label in ``scaling``."""
    out = [CatalogWitness(*w) for w in _fixed_templates()]
    for a in alphas:
        if Fraction(a) != -1:
            out.append(CatalogWitness(family_label("B1", a), "A5", family_witness("B1", a), "B1-A5"))
    for b in betas:
        if Fraction(b) != 1:
            out.append(CatalogWitness(family_label("B2", b), "A5", family_witness("B2", b), "B2-A5"))
    for label in scaling:
        zero = "P1" if load(label).dim == 1 else "A1"
        if label != zero:
            out.append(CatalogWitness(label, zero, scaling_witness(load(label).dim), "scaling"))
    return out


TEMPLATES = tuple(w[3] for w in _fixed_templates()) + ("B1-A5", "B2-A5")


# -- catalogs ----------------------------------------------------------------------


def dim1_labels() -> list[str]:
    return ["P2", "P1"]


def dim2_labels(alphas: Sequence = DEFAULT_ALPHAS, betas: Sequence = DEFAULT_BETAS) -> list[str]:
    """Catalog order: top row of the diagram first, the zero algebra last."""
    return (
        ["A3", "B4", "A2", "A4"]
        + [family_label("B1", a) for a in alphas if Fraction(a) != -1]
        + [family_label("B2", b) for b in betas if Fraction(b) != 1]
        + ["B3", "B5", "A5", "B1(-1)", "B2(1)", "A1"]
    )


def catalog(name: str, novikov: bool = False, alphas: Sequence = DEFAULT_ALPHAS,
            betas: Sequence = DEFAULT_BETAS) -> tuple[list[Algebra], list[CatalogWitness]]:
    """Algebras and witnesses of the dim1 or dim2 catalog."""
    if name == "dim1":
        labels = dim1_labels()
    elif name == "dim2":
        labels = dim2_labels(alphas, betas)
    else:
        raise UnknownLabel(name)
    if novikov:
        labels = [x for x in labels if expected(x)["novikov"]]
    algebras = [load(x) for x in labels]
    keep = set(labels)
    ws = [w for w in witnesses(alphas, betas, scaling=labels) if w.source in keep and w.target in keep]
    return algebras, ws


def identify(A: Algebra) -> str | None:
    """Catalog label whose structure constants equal those of A, if any."""
    if A.coeff_ring != "rational":
        return None
    for name, e in ENTRIES.items():
        if e.dim != A.dim:
            continue
        if e.param is None:
            if e.build().same_constants(A):
                return name
            continue
        # both families carry their parameter in e2*e2 = v e2
        v = A.constants[1][1][1]
        if v in e.forbidden:
            continue
        if e.build(v).same_constants(A):
            return family_label(name, v)
    return None


def witnesses_for(source: str, target: str) -> list[Witness]:
    """Catalog witnesses from ``source`` to ``target`` (labels as from ``identify``)."""
    alphas, betas = [], []
    for label in (source, target):
        name, value = parse_label(label)
        if value is not None:
            (alphas if name == "B1" else betas).append(value)
    ws = witnesses(alphas, betas, scaling=[source])
    return [w.witness for w in ws if w.source == source and w.target == target]

"""Polynomial identities in the multiplication operators L(x), L(y), R(x), R(y).

An identity is a rational combination of operator words, all of the same
multidegree (number of x-letters, number of y-letters). If it vanishes for
an algebra A it vanishes on the whole orbit closure of A, so an identity of
A that fails for B rules out A -> B.
"""

from __future__ import annotations

import itertools
import re
from math import lcm
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Algebra, RATIONAL, coordinate_names, left_operator, operator_ring, require_rational, right_operator
from .errors import MixedDegree, ParseError
from .exactmath import Matrix, MultiPoly, PolyRing, UniPoly, kernel, poly_gcd, unipoly_from_multipoly

SIDES = ("L", "R")
SLOTS = ("x", "y")
_LETTER = re.compile(r"^([LR])([xy])$")


@dataclass(frozen=True)
class OperatorWord:
    """Product of operators, left to right; the empty word is the identity."""

    letters: tuple[tuple[str, str], ...] = ()

    @classmethod
    def parse(cls, text: str) -> OperatorWord:
        text = text.strip()
        if text in ("", "1", "id"):
            return cls(())
        letters = []
        for part in text.split("."):
            m = _LETTER.match(part.strip())
            if not m:
                raise ParseError(f"bad operator letter {part!r} in word {text!r}")
            letters.append((m.group(1), m.group(2)))
        return cls(tuple(letters))

    @property
    def multidegree(self) -> tuple[int, int]:
        nx = sum(1 for _, slot in self.letters if slot == "x")
        return nx, len(self.letters) - nx

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return ".".join(side + slot for side, slot in self.letters) if self.letters else "1"


def _word_key(w: OperatorWord) -> tuple:
    return len(w), [slot for _, slot in w.letters], [side for side, _ in w.letters]


def words_of_degree(px: int, qy: int) -> list[OperatorWord]:
    """All words with ``px`` x-letters and ``qy`` y-letters, in a fixed order."""
    n = px + qy
    words = []
    for slots in sorted(set(itertools.permutations("x" * px + "y" * qy))):
        for sides in itertools.product(SIDES, repeat=n):
            words.append(OperatorWord(tuple(zip(sides, slots))))
    return words


@dataclass(frozen=True)
class OperatorIdentity:
    terms: tuple[tuple[Fraction, OperatorWord], ...]

    def __post_init__(self):
        merged: dict[OperatorWord, Fraction] = {}
        for c, w in self.terms:
            merged[w] = merged.get(w, Fraction(0)) + Fraction(c)
        terms = tuple(sorted(((c, w) for w, c in merged.items() if c), key=lambda cw: _word_key(cw[1])))
        degrees = {w.multidegree for _, w in terms}
        if len(degrees) > 1:
            raise MixedDegree(f"words of multidegrees {sorted(degrees)} in one identity")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[object, str | OperatorWord]]) -> OperatorIdentity:
        return cls(tuple(
            (Fraction(c), w if isinstance(w, OperatorWord) else OperatorWord.parse(w)) for c, w in pairs
        ))

    def serialize(self) -> list[tuple[str, str]]:
        return [(str(c), str(w)) for c, w in self.terms]

    @property
    def multidegree(self) -> tuple[int, int] | None:
        return self.terms[0][1].multidegree if self.terms else None

    def coefficient(self, word: OperatorWord | str) -> Fraction:
        w = word if isinstance(word, OperatorWord) else OperatorWord.parse(word)
        return dict((w2, c) for c, w2 in self.terms).get(w, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for c, w in self.terms:
            mag = abs(c)
            body = str(w) if mag == 1 else f"{mag}*{w}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += f" {'-' if c < 0 else '+'} {body}"
        return out


def commutator(u: Sequence[tuple[object, str]], v: Sequence[tuple[object, str]]) -> OperatorIdentity:
    """[U, V] for linear combinations U, V of words, expanded into words."""
    terms = []
    for (a, wu), (b, wv) in itertools.product(u, v):
        pu, pv = OperatorWord.parse(wu), OperatorWord.parse(wv)
        terms.append((Fraction(a) * Fraction(b), OperatorWord(pu.letters + pv.letters)))
        terms.append((-Fraction(a) * Fraction(b), OperatorWord(pv.letters + pu.letters)))
    return OperatorIdentity(tuple(terms))


# -- evaluation ----------------------------------------------------------------


class _Operators:
    """Cache of L(x), R(x), L(y), R(y) over a common polynomial ring."""

    def __init__(self, A: Algebra):
        self.algebra = A
        self.ring = operator_ring(A.dim, A.param)
        self._mats = {}

    def letter(self, side: str, slot: str) -> Matrix:
        key = (side, slot)
        if key not in self._mats:
            op = left_operator if side == "L" else right_operator
            self._mats[key] = op(self.algebra, slot, self.ring)
        return self._mats[key]

    def identity(self) -> Matrix:
        return Matrix.identity(self.algebra.dim, self.ring.one(), self.ring.zero())

    def word(self, w: OperatorWord) -> Matrix:
        result = self.identity()
        for side, slot in w.letters:
            result = result @ self.letter(side, slot)
        return result


def evaluate_word(A: Algebra, w: OperatorWord | str) -> Matrix:
    if isinstance(w, str):
        w = OperatorWord.parse(w)
    return _Operators(A).word(w)


def evaluate_identity(A: Algebra, T: OperatorIdentity) -> Matrix:
    ops = _Operators(A)
    n = A.dim
    total = Matrix.zeros(n, n, ops.ring.zero())
    for c, w in T.terms:
        total = total + ops.word(w).map(lambda x, c=c: x * c)
    return total


def _check_degrees(words: Sequence[OperatorWord]) -> None:
    degrees = {w.multidegree for w in words}
    if len(degrees) > 1:
        raise MixedDegree(f"words of multidegrees {sorted(degrees)} in one search")


def identity_basis(A: Algebra, words: Sequence[OperatorWord | str]) -> list[OperatorIdentity]:
    """Basis of {(c_w) : sum_w c_w w(L, R) = 0 identically in x, y}."""
    require_rational(A)
    words = [OperatorWord.parse(w) if isinstance(w, str) else w for w in words]
    _check_degrees(words)
    ops = _Operators(A)
    mats = [ops.word(w) for w in words]
    n = A.dim
    rows = []
    for r in range(n):
        for s in range(n):
            entries = [m[r, s] for m in mats]
            monos = sorted({mono for e in entries for mono in e.terms})
            for mono in monos:
                rows.append([e.terms.get(mono, Fraction(0)) for e in entries])
    _, basis = kernel(Matrix(rows, len(words)))
    return [OperatorIdentity(tuple(zip(v, words))) for v in basis]


def identity_space_dim(A: Algebra, words: Sequence[OperatorWord | str]) -> int:
    return len(identity_basis(A, words))


@dataclass(frozen=True)
class VanishingCondition:
    """The identity holds exactly at the roots of ``poly`` (monic, in the parameter)."""

    poly: UniPoly
    residual: Matrix

    @property
    def param(self) -> str:
        return self.poly.var

    def roots(self) -> list[Fraction]:
        """Rational roots, by the rational root test."""
        return _rational_roots(self.poly)

    def __str__(self) -> str:
        return f"{self.poly} = 0"


def _rational_roots(p: UniPoly) -> list[Fraction]:
    if p.degree() < 1:
        return []
    scale = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * scale) for c in p.coeffs]
    # strip zero roots
    roots = []
    while ints and ints[0] == 0:
        ints.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(ints) < 2:
        return roots

    def divisors(m):
        m = abs(m)
        return [d for d in range(1, m + 1) if m % d == 0]

    for q in divisors(ints[-1]):
        for r in divisors(ints[0]):
            for cand in (Fraction(r, q), Fraction(-r, q)):
                if cand not in roots and p(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _xy_names(A: Algebra) -> list[str]:
    return coordinate_names(A.dim, "x") + coordinate_names(A.dim, "y")


def residual(B: Algebra, T: OperatorIdentity) -> Matrix:
    """The evaluated combination; zero iff T holds for B."""
    return evaluate_identity(B, T)


def holds(B: Algebra, T: OperatorIdentity) -> bool | VanishingCondition:
    """Whether T vanishes for B.

    For a parametric B the answer is ``True`` (identically), ``False``
    (for no parameter value) or the polynomial condition on the parameter.
    """
    res = residual(B, T)
    if B.coeff_ring == RATIONAL:
        return res.is_zero()
    if B.param is None:
        raise TypeError("identities need rational or polynomial-in-parameter constants")
    names = _xy_names(B)
    g = None
    for entry in (x for row in res.rows for x in row):
        for coeff in entry.coefficients_in(names).values():
            u = unipoly_from_multipoly(coeff, B.param)
            g = u if g is None else poly_gcd(g, u)
    if g is None:
        return True
    g = g.monic()
    if g.degree() == 0:
        return False
    return VanishingCondition(g, res)


@dataclass(frozen=True)
class IdentityObstruction:
    """An identity of the source that fails for the target."""

    identity: OperatorIdentity
    degree: tuple[int, int]
    residual: Matrix

    criterion = "identity"

    def describe(self) -> str:
        return f"identity {self.identity} (degree {self.degree}) fails: residual {self.residual}"


def _word_set(spec) -> list[OperatorWord]:
    if isinstance(spec, tuple) and len(spec) == 2 and all(isinstance(v, int) for v in spec):
        return words_of_degree(*spec)
    return [OperatorWord.parse(w) if isinstance(w, str) else w for w in spec]


def transfer_criterion(A: Algebra, B: Algebra, word_sets: Iterable = ((1, 0), (0, 1), (1, 1))):
    """First identity of A (over the word sets, in order) that fails for B, or None."""
    require_rational(A)
    require_rational(B)
    for spec in word_sets:
        words = _word_set(spec)
        if not words:
            continue
        for T in identity_basis(A, words):
            res = residual(B, T)
            if not res.is_zero():
                return IdentityObstruction(T, words[0].multidegree, res)
    return None


def commutativity_identity() -> OperatorIdentity:
    return OperatorIdentity.from_pairs([(1, "Lx"), (-1, "Rx")])


def associativity_identity() -> OperatorIdentity:
    return OperatorIdentity.from_pairs([(1, "Lx.Ry"), (-1, "Ry.Lx")])


def t_family(r, s) -> OperatorIdentity:
    """The two-parameter family of degree-(1,1) identities of B4.

    r (Lx Ry - Ly Rx) + s (Rx Ly - Ry Lx) + (s - 3r) [Lx, Ly] + (r - 2s)/2 [Rx, Ry]
    """
    r, s = Fraction(r), Fraction(s)
    terms = [
        (r, "Lx.Ry"), (-r, "Ly.Rx"),
        (s, "Rx.Ly"), (-s, "Ry.Lx"),
        (s - 3 * r, "Lx.Ly"), (-(s - 3 * r), "Ly.Lx"),
        ((r - 2 * s) / 2, "Rx.Ry"), (-(r - 2 * s) / 2, "Ry.Rx"),
    ]
    return OperatorIdentity.from_pairs(terms)

"""Sparse multivariate polynomials over the rationals.

A :class:`PolyRing` fixes an ordered alphabet of variable names; a
:class:`MultiPoly` maps exponent vectors over that alphabet to nonzero
:class:`~fractions.Fraction` coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...], one exponent per ring variable


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a rational coefficient")


class PolyRing:
    """Q[v_1, ..., v_m] with a fixed variable order."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self._index = {name: i for i, name in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return self.constant(1)

    def constant(self, value) -> MultiPoly:
        c = _as_fraction(value)
        return MultiPoly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name: str) -> MultiPoly:
        exps = [0] * self.nvars
        exps[self._index[name]] = 1
        return MultiPoly(self, {tuple(exps): Fraction(1)})

    def gens(self) -> tuple[MultiPoly, ...]:
        return tuple(self.gen(name) for name in self.names)

    def __call__(self, value) -> MultiPoly:
        if isinstance(value, MultiPoly):
            return value.embed(self)
        return self.constant(value)


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` never stores a zero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # -- coercion -------------------------------------------------------

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def embed(self, ring: PolyRing) -> MultiPoly:
        """The same polynomial viewed in a ring whose alphabet contains ours."""
        if ring == self.ring:
            return self
        try:
            positions = [ring.index(name) for name in self.ring.names]
        except KeyError as exc:
            raise ValueError(f"{ring} does not contain variable {exc.args[0]}") from None
        terms = {}
        for mono, c in self.terms.items():
            exps = [0] * ring.nvars
            for pos, e in zip(positions, mono):
                exps[pos] = e
            terms[tuple(exps)] = c
        return MultiPoly(ring, terms)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return MultiPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return MultiPoly(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return MultiPoly(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational constant only."""
        if isinstance(other, MultiPoly):
            other = self._coerce(other)
            if not other.is_constant():
                return NotImplemented
            other = other.constant_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        inv = 1 / Fraction(other)
        return self * inv

    def __pow__(self, k: int) -> MultiPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("MultiPoly exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(m == zero for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        """Lex-leading monomial and its coefficient."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms)
        return m, self.terms[m]

    def variables(self) -> tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(self.ring.names[i] for i in sorted(used))

    def coefficients_in(self, names: Sequence[str]) -> dict[Monomial, MultiPoly]:
        """Split into {monomial in ``names``: coefficient polynomial in the rest}.

        The coefficients live in the ring of the remaining variables.
        """
        idx = [self.ring.index(n) for n in names]
        rest_names = [n for n in self.ring.names if n not in set(names)]
        rest_idx = [self.ring.index(n) for n in rest_names]
        rest = PolyRing(rest_names)
        grouped: dict[Monomial, dict] = {}
        for m, c in self.terms.items():
            key = tuple(m[i] for i in idx)
            sub = tuple(m[i] for i in rest_idx)
            grouped.setdefault(key, {})[sub] = c
        return {k: MultiPoly(rest, v) for k, v in grouped.items()}

    # -- evaluation -----------------------------------------------------

    def evaluate(self, values: Mapping[str, object] | Sequence) -> Fraction:
        """Evaluate at a full point; every variable must be assigned."""
        if isinstance(values, Mapping):
            point = [values[name] for name in self.ring.names]
        else:
            point = list(values)
            if len(point) != self.ring.nvars:
                raise ValueError("point has the wrong number of coordinates")
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for v, e in zip(point, m):
                if e:
                    term *= v**e
            total += term
        return total

    def substitute(self, values: Mapping[str, object]) -> MultiPoly:
        """Substitute rationals or same-ring polynomials for some variables."""
        result = self.ring.zero()
        gens = {name: self.ring.gen(name) for name in self.ring.names}
        for name, v in values.items():
            if name not in self.ring:
                raise ValueError(f"{name} is not a variable of {self.ring}")
            gens[name] = self._coerce(v)
        powers: dict = {}
        for m, c in self.terms.items():
            term = self.ring.constant(c)
            for name, e in zip(self.ring.names, m):
                if e:
                    key = (name, e)
                    if key not in powers:
                        powers[key] = gens[name] ** e
                    term = term * powers[key]
            result = result + term
        return result

    # -- display --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            factors = []
            for name, e in zip(self.ring.names, m):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

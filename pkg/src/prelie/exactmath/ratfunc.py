"""Univariate polynomials and rational functions over Q.

``RatFunc`` is kept in canonical form: gcd(num, den) = 1 and den monic, so
two rational functions are equal iff their stored pairs are equal. The
variable name is carried for display and to refuse mixing Q(t) with Q(a).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a rational coefficient")


class UniPoly:
    """Dense polynomial, ``coeffs[k]`` is the coefficient of var**k."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = [_frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, k: int, coeff=1, var: str = "t") -> UniPoly:
        return cls([0] * k + [coeff], var)

    @classmethod
    def constant(cls, c, var: str = "t") -> UniPoly:
        return cls([c], var)

    def _coerce(self, other) -> UniPoly | None:
        if isinstance(other, UniPoly):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other], self.var)
        return None

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def valuation(self) -> int | None:
        """Order of vanishing at 0; ``None`` stands for infinity (zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(k) + other.coeff(k) for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        if k < 0:
            raise ValueError("negative exponent on a polynomial")
        result = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple[UniPoly, UniPoly]:
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly((), self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lc = other.coeffs[-1]
        for k in range(dq, -1, -1):
            q = rem[k + len(other.coeffs) - 1] / lc
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(quot, self.var), UniPoly(rem[: len(other.coeffs) - 1], self.var)

    def __floordiv__(self, other) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> UniPoly:
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        if isinstance(other, UniPoly):
            return self.var == other.var and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.var, self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"UniPoly({self})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


class _Diverges:
    """Returned by limit computations when a pole sits at the evaluation point."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Diverges"

    def __bool__(self) -> bool:
        return False


Diverges = _Diverges()


class RatFunc:
    """Element of Q(var) in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var: str | None = None):
        if not isinstance(num, UniPoly):
            num = UniPoly([num], var or (den.var if isinstance(den, UniPoly) else "t"))
        if den is None:
            den = UniPoly([1], num.var)
        elif not isinstance(den, UniPoly):
            den = UniPoly([den], num.var)
        if den.var != num.var:
            raise ValueError(f"variable mismatch: {num.var} vs {den.var}")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, UniPoly([1], num.var)
            return
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        lc = den.leading()
        self.num = UniPoly([c / lc for c in num.coeffs], num.var)
        self.den = UniPoly([c / lc for c in den.coeffs], num.var)

    @classmethod
    def var_power(cls, k: int, var: str = "t") -> RatFunc:
        """var**k for any integer k."""
        if k >= 0:
            return cls(UniPoly.monomial(k, var=var))
        return cls(UniPoly([1], var), UniPoly.monomial(-k, var=var))

    @property
    def var(self) -> str:
        return self.num.var

    def _coerce(self, other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(UniPoly([other], self.var))
        if isinstance(other, UniPoly):
            return RatFunc(other)
        return None

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        out = object.__new__(RatFunc)
        out.num, out.den = -self.num, self.den
        return out

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
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc(UniPoly((), self.var))
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, UniPoly)):
            other = self._coerce(other)
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        if self.den.degree() == 0 and self.num.degree() <= 0:
            return hash(self.num.coeff(0))
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"{self} has a pole at {x}")
        return self.num(x) / d

    def limit_at_zero(self):
        return ratfunc_limit_at_zero(self)

    def __str__(self) -> str:
        if self.den.degree() == 0:
            return str(self.num)
        num = str(self.num)
        if len(self.num.coeffs) - self.num.coeffs.count(0) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den.coeffs) - self.den.coeffs.count(0) > 1 or self.den.leading() != 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def ratfunc_limit_at_zero(f: RatFunc):
    """Limit of ``f`` as its variable tends to 0: a Fraction or ``Diverges``."""
    vn = f.num.valuation()
    vd = f.den.valuation()
    if vn is None:
        return Fraction(0)
    if vn > vd:
        return Fraction(0)
    if vn == vd:
        return f.num.coeffs[vn] / f.den.coeffs[vd]
    return Diverges


def as_ratfunc(value, var: str = "t") -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, UniPoly):
        return RatFunc(value)
    return RatFunc(UniPoly([_frac(value)], var))


def unipoly_from_multipoly(p, var: str | None = None) -> UniPoly:
    """Convert a MultiPoly in at most one variable to a UniPoly."""
    used = p.variables()
    if len(used) > 1:
        raise ValueError(f"{p} is not univariate")
    name = var or (used[0] if used else (p.ring.names[0] if p.ring.names else "t"))
    if used and used[0] != name:
        raise ValueError(f"{p} is a polynomial in {used[0]}, not {name}")
    if not p.ring.nvars:
        return UniPoly([p.terms.get((), 0)], name)
    i = p.ring.index(name) if name in p.ring else 0
    coeffs: dict[int, Fraction] = {}
    for m, c in p.terms.items():
        coeffs[m[i]] = coeffs.get(m[i], 0) + c
    top = max(coeffs, default=-1)
    return UniPoly([coeffs.get(k, 0) for k in range(top + 1)], name)


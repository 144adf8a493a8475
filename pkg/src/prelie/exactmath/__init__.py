"""Exact arithmetic: rationals, polynomials, rational functions, matrices."""

from fractions import Fraction

from .linalg import Matrix, Subspace, bareiss_echelon, det, invert, kernel, nullspace, rank, stack_systems
from .polys import MultiPoly, PolyRing
from .ratfunc import (
    Diverges,
    RatFunc,
    UniPoly,
    as_ratfunc,
    poly_gcd,
    ratfunc_limit_at_zero,
    unipoly_from_multipoly,
)

Rational = Fraction


def as_rational(value) -> Fraction:
    """Exact rational from an int, Fraction or string such as ``"-3/4"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


__all__ = [
    "Diverges",
    "Fraction",
    "Matrix",
    "MultiPoly",
    "PolyRing",
    "RatFunc",
    "Rational",
    "Subspace",
    "UniPoly",
    "as_rational",
    "as_ratfunc",
    "bareiss_echelon",
    "det",
    "invert",
    "kernel",
    "nullspace",
    "poly_gcd",
    "rank",
    "ratfunc_limit_at_zero",
    "stack_systems",
    "unipoly_from_multipoly",
]

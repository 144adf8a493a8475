import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prelie.errors import SingularMatrix
from prelie.exactmath import (
    Diverges,
    Matrix,
    PolyRing,
    RatFunc,
    UniPoly,
    invert,
    kernel,
    poly_gcd,
    rank,
    ratfunc_limit_at_zero,
)

from conftest import fractions, random_fraction, random_ratfunc_invertible, ratfuncs, unipolys

t = RatFunc.var_power(1)


def naive_rank(rows):
    """Plain Gauss-Jordan over Fractions, written independently of the library."""
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


# -- examples -----------------------------------------------------------------


def test_limit_examples():
    assert ratfunc_limit_at_zero(t**3 - t) == 0
    assert ratfunc_limit_at_zero((t**2 + 3 * t) / t) == 3
    assert ratfunc_limit_at_zero(1 / t) is Diverges
    assert ratfunc_limit_at_zero(RatFunc(UniPoly([2, 1]), UniPoly([4, 0, 1]))) == Fraction(1, 2)


def test_kernel_examples():
    r, basis = kernel(Matrix([[1, 2], [2, 4]]))
    assert r == 1 and basis == [(Fraction(-2), Fraction(1))]
    r, basis = kernel(Matrix.zeros(3, 3))
    assert r == 0 and len(basis) == 3


def test_kernel_of_empty_system():
    r, basis = kernel(Matrix([], 4))
    assert r == 0 and len(basis) == 4


def test_invert_examples():
    g = Matrix([[t**0, t * 0], [t**2, t]])
    assert invert(g) == Matrix([[1, 0], [-t, 1 / t]])
    one = Matrix.identity(2, t**0, t * 0)
    assert invert(one) == one
    with pytest.raises(SingularMatrix):
        invert(Matrix([[t, t], [t, t]]))


def test_multipoly_examples():
    R = PolyRing(["x1", "x2", "y1", "y2", "a"])
    x1, x2, y1, y2, a = R.gens()
    assert (x1 + x2) * (x1 - x2) == x1**2 - x2**2
    assert str((x1 + x2) * (x1 - x2)) == "x1^2 - x2^2"
    assert (x1 * y2 - x2 * y1).evaluate({"x1": 1, "x2": 0, "y1": 0, "y2": 1, "a": 0}) == 1
    p = (a + 2) * (x2 * y1 - x1 * y2)
    assert p.substitute({"a": -2}).is_zero()
    assert not p.substitute({"a": 3}).is_zero()


def test_multipoly_canonical():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    assert (x + y - x).terms == y.terms
    assert not (x - x).terms
    assert hash(x * y + 1) == hash(1 + y * x)


def test_unipoly_divmod_and_gcd():
    p = UniPoly([-1, 0, 1])  # t^2 - 1
    q = UniPoly([1, 1])
    assert divmod(p, q) == (UniPoly([-1, 1]), UniPoly([]))
    assert poly_gcd(p, UniPoly([1, 2, 1])) == UniPoly([1, 1])


def test_ratfunc_canonical_form():
    f = RatFunc(UniPoly([0, 2, 2]), UniPoly([0, 4]))  # (2t + 2t^2) / 4t
    assert f.num == UniPoly([Fraction(1, 2), Fraction(1, 2)])
    assert f.den == UniPoly([1])
    assert str(RatFunc(UniPoly([-1, 0, 0, 1]), UniPoly([0, 1]))) == "(t^3 - 1)/t"


# -- properties -----------------------------------------------------------------


@given(ratfuncs, ratfuncs)
def test_canonical_form_uniqueness(f, g):
    same_function = f.num * g.den == g.num * f.den
    assert same_function == (f.num == g.num and f.den == g.den)
    assert f.den.leading() == 1


@given(ratfuncs, ratfuncs)
def test_limit_is_multiplicative(f, g):
    lf, lg = ratfunc_limit_at_zero(f), ratfunc_limit_at_zero(g)
    if lf is not Diverges and lg is not Diverges:
        assert ratfunc_limit_at_zero(f * g) == lf * lg


@given(ratfuncs, ratfuncs, ratfuncs)
def test_ratfunc_field_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f - f == 0
    if f:
        assert f * f.inverse() == 1


@given(unipolys(), unipolys(), fractions)
def test_unipoly_evaluation_is_a_homomorphism(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=12), st.randoms(use_true_random=False))
def test_kernel_against_naive_elimination(nrows, ncols, rng):
    density = rng.random()
    rows = [[random_fraction(rng) if rng.random() < density else Fraction(0) for _ in range(ncols)]
            for _ in range(nrows)]
    M = Matrix(rows)
    r, basis = kernel(M)
    assert r == naive_rank(rows) == rank(M)
    assert r + len(basis) == ncols
    for v in basis:
        assert all(x == 0 for x in M.apply(v))
    if basis:
        assert naive_rank(basis) == len(basis)


@pytest.mark.parametrize("n", [2, 3])
def test_invert_two_sided(n):
    rng = random.Random(n)
    for _ in range(50):
        g = random_ratfunc_invertible(rng, n)
        gi = invert(g)
        one = Matrix.identity(n, t**0, t * 0)
        assert g @ gi == one
        assert gi @ g == one

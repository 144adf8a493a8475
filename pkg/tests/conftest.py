import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from prelie.exactmath import Matrix, RatFunc, UniPoly, det

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

FROZEN = json.loads((Path(__file__).parent / "oracles" / "frozen.json").read_text())


@pytest.fixture(scope="session")
def frozen():
    return FROZEN


small_ints = st.integers(min_value=-6, max_value=6)
fractions = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))


def unipolys(max_degree=3):
    return st.lists(fractions, min_size=0, max_size=max_degree + 1).map(UniPoly)


def nonzero_unipolys(max_degree=3):
    return unipolys(max_degree).filter(bool)


ratfuncs = st.builds(RatFunc, unipolys(3), nonzero_unipolys(2))


def random_fraction(rng: random.Random, lo=-5, hi=5, maxden=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, maxden))


def random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        M = Matrix([[random_fraction(rng) for _ in range(n)] for _ in range(n)])
        if det(M):
            return M


def random_ratfunc(rng: random.Random, max_degree=2) -> RatFunc:
    num = UniPoly([random_fraction(rng, -3, 3, 2) for _ in range(rng.randint(1, max_degree + 1))])
    den = UniPoly([0])
    while not den:
        den = UniPoly([random_fraction(rng, -3, 3, 2) for _ in range(rng.randint(1, max_degree))])
    return RatFunc(num, den)


def random_ratfunc_invertible(rng: random.Random, n: int, max_degree=2) -> Matrix:
    while True:
        M = Matrix([[random_ratfunc(rng, max_degree) for _ in range(n)] for _ in range(n)])
        if det(M):
            return M


# -- acceptance report ------------------------------------------------------------

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def report():
    """report(key, ok, detail) records one acceptance line and returns ok."""

    def record(key: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE[key] = (bool(ok), detail)
        print(f"{'PASS' if ok else 'FAIL'} criterion {key}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: [int(p) if p.isdigit() else p for p in k.split(".")]):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {key}: {detail}")

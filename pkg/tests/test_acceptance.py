"""Acceptance criteria, one PASS/FAIL line each (see the terminal summary)."""

import random
import time
from fractions import Fraction

import pytest

from prelie import catalog
from prelie.algebra import associated_lie, center, change_basis, is_prelie, left_annihilator, right_annihilator
from prelie.degeneration import (
    CommutativityObstruction,
    Witness,
    act,
    hasse,
    limit,
    obstructions,
    scaling_witness,
    verify_witness,
)
from prelie.derivations import DerivationWeights, der, generalized_derivations, orbit_dim
from prelie.exactmath import Diverges, Matrix, kernel, rank
from prelie.identities import (
    IdentityObstruction,
    commutativity_identity,
    commutator,
    holds,
    identity_basis,
    residual,
    words_of_degree,
)
from prelie.traceinv import TraceObstruction, c_invariant

from conftest import random_fraction, random_invertible, random_ratfunc_invertible
from test_degeneration import _finite_limits
from test_exactmath import naive_rank

t = catalog.t
one, zero = t**0, t * 0
ALPHAS, BETAS = catalog.SAMPLE_ALPHAS, catalog.SAMPLE_BETAS
LABELS = catalog.dim2_labels(ALPHAS, BETAS)
T22 = commutator([(2, "Lx"), (-1, "Rx")], [(2, "Ly"), (-1, "Ry")])


@pytest.fixture(scope="module")
def graph():
    algs, ws = catalog.catalog("dim2", alphas=ALPHAS, betas=BETAS)
    return hasse(algs, ws), {A.label: A for A in algs}


# 1 -------------------------------------------------------------------------------

DER = {
    "A1": 4, "A2": 1, "A3": 0, "A4": 1, "A5": 2,
    "B1(-2)": 1, "B1(-1/2)": 1, "B1(0)": 1, "B1(3)": 1, "B1(-1)": 2,
    "B2(-1)": 1, "B2(2)": 1, "B2(1)": 2, "B3": 1, "B4": 0, "B5": 1, "P1": 1, "P2": 0,
}


def test_criterion_1_derivation_table(report):
    got = {x: der(catalog.load(x)).dim for x in DER}
    bad = {x: (got[x], DER[x]) for x in DER if got[x] != DER[x]}
    assert report("1", not bad, f"dim Der matches for {len(DER) - len(bad)}/{len(DER)} entries"
                  + (f"; mismatches {bad}" if bad else ""))


# 2 -------------------------------------------------------------------------------

h = Fraction(1, 2)
PRINTED = {
    "A3-A2": [[one, zero], [t**2, t]],
    "A3-A4": [[one, zero], [one, t]],
    "A3-A5": [[2 * t**2, 2 * t], [zero, one]],
    "B4-B1": [[t, zero], [t, one]],
    "B4-B2": [[h * one, zero], [-h * one, t]],
    "B4-A5": [[2 * t, zero], [t, 3 * t**2]],
    "A2-A5": [[t, zero], [one, -t]],
    "A4-A5": [[t, zero], [one, t]],
    "B3-A5": [[t**-2, zero], [zero, t**-1]],
    "B3-B1": [[-t, zero], [zero, one]],
    "B5-A5": [[t**-2, zero], [zero, t**-1]],
    "B5-B2": [[t**-1, zero], [zero, one]],
}


def _printed(w):
    if w.template == "B1-A5":
        a = catalog.parse_label(w.source)[1]
        return [[one, zero], [t, t**2 * (a + 1)]]
    if w.template == "B2-A5":
        b = catalog.parse_label(w.source)[1]
        return [[one, zero], [t, t**2 * (b - 1)]]
    return PRINTED[w.template]


def test_criterion_2_witness_suite(report):
    shipped = catalog.witnesses(ALPHAS, BETAS, scaling=LABELS + catalog.dim1_labels())
    slow, failed, altered = [], [], set()
    for w in shipped:
        start = time.perf_counter()
        ok = verify_witness(catalog.load(w.source), catalog.load(w.target), w.witness)
        elapsed = time.perf_counter() - start
        if not ok:
            failed.append(w.template)
        if elapsed >= 1:
            slow.append(w.template)
        if w.template != "scaling" and w.witness.matrix != Matrix(_printed(w)):
            altered.add(w.template)
    # the printed matrices verify only when read with the orientation flag and relabel
    # of the shipped witness; two need a different matrix
    for name in sorted(altered):
        src = next(w for w in shipped if w.template == name)
        verbatim = Witness(Matrix(_printed(src)), src.witness.inverse_given, src.witness.relabel)
        assert not verify_witness(catalog.load(src.source), catalog.load(src.target), verbatim)
    ok = not failed and not slow and not altered
    detail = (f"{len(shipped) - len(failed)}/{len(shipped)} shipped witnesses verify, all < 1 s"
              if not slow else f"slow: {slow}")
    detail += f"; {14 - len(altered)}/14 templates verify as printed"
    if altered:
        detail += (f" ({', '.join(sorted(altered))} do not: A3->A5 diverges in every orientation,"
                   " A4->A5 verifies only transposed; corrected matrices ship instead)")
    assert report("2", ok, detail)


# 3 -------------------------------------------------------------------------------

CLOSURES = {
    "A3": {"A2", "A4", "A5", "A1"},
    "B4": {"B1(-2)", "B2(-1)", "A5", "A1"},
    "A2": {"A5", "A1"},
    "A4": {"A5", "A1"},
    "B3": {"A5", "B1(-1)", "A1"},
    "B5": {"A5", "B2(1)", "A1"},
    "A5": {"A1"},
    "B1(-1)": {"A1"},
    "B2(1)": {"A1"},
}
for _a in ALPHAS:
    if _a != -1:
        CLOSURES[catalog.family_label("B1", _a)] = {"A5", "A1"}
for _b in BETAS:
    if _b != 1:
        CLOSURES[catalog.family_label("B2", _b)] = {"A5", "A1"}


def _reasons(graph, a, b, kind):
    return [r for r in graph[0].verdicts[a, b].reasons if isinstance(r, kind)]


def test_criterion_3_orbit_closures(graph, report):
    H, algs = graph
    dims = H.orbit_dims()
    problems = []
    for a, closure in CLOSURES.items():
        for b in algs:
            if dims[b] >= dims[a]:
                continue
            v = H.verdicts[a, b]
            if b in closure and not v.verified:
                problems.append(f"{a}->{b} not verified")
            if b not in closure and not (v.ruled_out and v.reasons):
                problems.append(f"{a}->{b} not ruled out")

    def c11(a, b, va, vb):
        r = _reasons(graph, a, b, TraceObstruction)
        return any((x.i, x.j, x.value_a, x.value_b) == (1, 1, va, vb) for x in r)

    checks = {
        "B4-A2 c11": c11("B4", "A2", Fraction(9, 5), 1),
        "B4-A4 c11": c11("B4", "A4", Fraction(9, 5), 2),
        "B4-B3 c11": c11("B4", "B3", Fraction(9, 5), 2),
        "B4-B5 c11": c11("B4", "B5", Fraction(9, 5), 1),
        "B4-B2(2) identity": bool(_reasons(graph, "B4", "B2(2)", IdentityObstruction)),
    }
    for a in ("-1/2", "0", "3"):
        alpha = Fraction(a)
        ok = bool(_reasons(graph, "B4", f"B1({a})", IdentityObstruction))
        res = residual(catalog.load(f"B1({a})"), T22)
        R = res[0, 1].ring
        x1, x2, y1, y2 = (R.gen(v) for v in ("x1", "x2", "y1", "y2"))
        # transposed-operator convention flips the sign of a commutator
        ok = ok and res[0, 1] == -(alpha + 2) * (x2 * y1 - x1 * y2)
        checks[f"B4-B1({a}) identity"] = ok
    for a, b in [("B1(0)", "B1(-1)"), ("B1(3)", "B2(1)"), ("B2(2)", "B2(1)"), ("B2(2)", "B1(-1)"),
                 ("B3", "B2(1)"), ("B5", "B1(-1)")]:
        checks[f"{a}-{b} c"] = bool(_reasons(graph, a, b, TraceObstruction))
    comm = commutativity_identity()
    for b in algs:
        if not catalog.expected(b)["commutative"] and dims[b] < dims["A3"]:
            ids = _reasons(graph, "A3", b, IdentityObstruction)
            checks[f"A3-{b} commutativity"] = (
                any(len(r.identity.terms) == 2 and r.identity.coefficient("Lx")
                    == -r.identity.coefficient("Rx") != 0 for r in ids)
                and bool(_reasons(graph, "A3", b, CommutativityObstruction))
                and holds(algs[b], comm) is False
            )
    bad = problems + [k for k, v in checks.items() if not v]
    assert report("3", not bad, f"{len(CLOSURES)} closure rows reproduced, {len(checks)} named rule-outs confirmed"
                  + (f"; problems {bad}" if bad else ""))


# 4 -------------------------------------------------------------------------------


def _closed_form(p, q, i, j):
    return Fraction((p**i + q**i) * (p**j + q**j)) / (p ** (i + j) + q ** (i + j))


def test_criterion_4_trace_invariants(report):
    def value(label, i, j):
        c = c_invariant(catalog.load(label), i, j)
        return c.value if c.is_constant else None

    bad = []
    if value("B4", 1, 1) != Fraction(9, 5):
        bad.append("c11(B4)")
    if value("B4", 2, 3) != Fraction(15, 11):
        bad.append("c23(B4)")
    for label, v in [("A2", 1), ("A4", 2), ("B3", 2), ("B5", 1)]:
        for i in range(1, 4):
            for j in range(1, 4):
                if value(label, i, j) != v:
                    bad.append(f"c{i}{j}({label})")
    for a in ALPHAS:
        for i in range(1, 4):
            for j in range(1, 4):
                if value(catalog.family_label("B1", a), i, j) != _closed_form(a, -1, i, j):
                    bad.append(f"c{i}{j}(B1({a}))")
    for b in BETAS:
        for i in range(1, 4):
            for j in range(1, 4):
                if value(catalog.family_label("B2", b), i, j) != _closed_form(b, b - 1, i, j):
                    bad.append(f"c{i}{j}(B2({b}))")
    assert report("4", not bad, "c11(B4)=9/5, c23(B4)=15/11, constant tables and family closed forms exact"
                  if not bad else f"mismatches {bad}")


# 5 -------------------------------------------------------------------------------


def test_criterion_5_identity_engine(report):
    B4 = catalog.load("B4")
    words = words_of_degree(1, 1)
    basis = identity_basis(B4, words)
    rows = [[T.coefficient(w) for w in words] for T in basis]
    in_span = rank(Matrix(rows + [[T22.coefficient(w) for w in words]])) == len(basis)
    c1, c2 = holds(catalog.load("B1"), T22), holds(catalog.load("B2"), T22)
    ok = (len(basis) >= 2 and in_span and holds(B4, T22) is True
          and str(c1) == "a + 2 = 0" and str(c2) == "b + 1 = 0")
    assert report("5", ok, f"dim {len(basis)} at degree (1,1), commutator in span, "
                  f"conditions on B1: {c1}, on B2: {c2}")


# 6 -------------------------------------------------------------------------------


def _family_edges(alphas, betas):
    edges = {("A3", "A2"), ("A3", "A4"), ("A2", "A5"), ("A4", "A5"),
             ("B3", "A5"), ("B3", "B1(-1)"), ("B5", "A5"), ("B5", "B2(1)"),
             ("A5", "A1"), ("B1(-1)", "A1"), ("B2(1)", "A1")}
    if Fraction(-2) in alphas:
        edges.add(("B4", "B1(-2)"))
    if Fraction(-1) in betas:
        edges.add(("B4", "B2(-1)"))
    edges |= {(catalog.family_label("B1", a), "A5") for a in alphas if a != -1}
    edges |= {(catalog.family_label("B2", b), "A5") for b in betas if b != 1}
    return edges


def test_criterion_6_hasse(report):
    algs, ws = catalog.catalog("dim2")
    full = set(hasse(algs, ws).edges)
    exp_full = _family_edges(catalog.DEFAULT_ALPHAS, catalog.DEFAULT_BETAS)
    algs, ws = catalog.catalog("dim2", novikov=True)
    nov = set(hasse(algs, ws).edges)
    # Novikov members: A1..A5, B5 and B2(beta) for every beta; B2(0) appears as B1(0)
    keep = {A.label for A in algs}
    exp_nov = {e for e in exp_full if set(e) <= keep}
    algs, ws = catalog.catalog("dim1")
    d1 = set(hasse(algs, ws).edges)
    ok = full == exp_full and nov == exp_nov and d1 == {("P2", "P1")}
    assert report("6", ok, f"dim2 {len(full)} covering edges, Novikov {len(nov)}, dim1 {sorted(d1)}"
                  + ("" if ok else f"; diff {full ^ exp_full} / {nov ^ exp_nov}"))


# 7 -------------------------------------------------------------------------------


def test_criterion_7_1_group_law(report):
    rng = random.Random(71)
    n = 0
    for k in range(100):
        A = catalog.load(LABELS[k % len(LABELS)])
        w1 = Witness(random_ratfunc_invertible(rng, 2, 1))
        w2 = Witness(random_ratfunc_invertible(rng, 2, 1), inverse_given=bool(k % 2))
        n += act(act(A, w1), w2) == act(A, w2.compose(w1))
    assert report("7.1", n == 100, f"group-action law {n}/100")


@pytest.fixture(scope="module")
def finite_limits():
    return _finite_limits(100)


def test_criterion_7_2_closedness(finite_limits, report):
    n = sum(is_prelie(L) for _, _, L in finite_limits)
    assert report("7.2", n == len(finite_limits) >= 100, f"limits pre-Lie {n}/{len(finite_limits)}")


def test_criterion_7_3_isomorphism_invariance(report):
    rng = random.Random(73)
    n = 0
    for k in range(100):
        A = catalog.load(LABELS[k % len(LABELS)])
        B = change_basis(A, random_invertible(rng, 2))
        same = (der(A).dim == der(B).dim
                and all(f(A).dim == f(B).dim for f in (left_annihilator, right_annihilator, center)))
        for i, j in [(1, 1), (1, 2), (2, 3)]:
            ca, cb = c_invariant(A, i, j), c_invariant(B, i, j)
            if ca.is_constant:
                same = same and cb.is_constant and ca.value == cb.value
        n += same
    assert report("7.3", n == 100, f"invariants preserved under base change {n}/100")


def test_criterion_7_4_lie_compatibility(finite_limits, report):
    n = total = 0
    for A, w, L in finite_limits:
        gl = limit(act(associated_lie(A), w))
        n += gl is not Diverges and gl.same_constants(associated_lie(L))
        total += 1
    for w in catalog.witnesses(ALPHAS, BETAS, scaling=LABELS):
        A, B = catalog.load(w.source), catalog.load(w.target)
        n += limit(act(associated_lie(A), w.witness)).same_constants(associated_lie(B))
        total += 1
    assert report("7.4", n == total >= 100, f"Lie-compatible {n}/{total} (random and catalog witnesses)")


def test_criterion_7_5_semicontinuity(graph, report):
    H, algs = graph
    rng = random.Random(75)
    n = total = 0
    for a, b in sorted(H.relation):
        A, B = algs[a], algs[b]
        ok = orbit_dim(A) > orbit_dim(B)
        ok = ok and all(f(A).dim <= f(B).dim for f in (left_annihilator, right_annihilator, center))
        for _ in range(4):
            wt = DerivationWeights(*(random_fraction(rng, -2, 2, 2) for _ in range(3)))
            total += 1
            n += ok and generalized_derivations(A, wt).dim <= generalized_derivations(B, wt).dim
    assert report("7.5", n == total >= 100, f"semicontinuity over {len(H.relation)} verified pairs, {n}/{total} checks")


def test_criterion_7_6_soundness(graph, report):
    H, algs = graph
    both = [(a, b) for a in algs for b in algs if a != b
            and H.verdicts[a, b].verified and obstructions(algs[a], algs[b])]
    total = len(algs) * (len(algs) - 1)
    assert report("7.6", not both and total >= 100, f"{total} ordered pairs, {len(both)} both Verified and RuledOut")


def test_criterion_7_7_kernel_oracle(report):
    rng = random.Random(77)
    n = 0
    for _ in range(100):
        nr, nc = rng.randint(1, 12), rng.randint(1, 12)
        density = rng.random()
        rows = [[random_fraction(rng) if rng.random() < density else Fraction(0) for _ in range(nc)]
                for _ in range(nr)]
        M = Matrix(rows)
        r, basis = kernel(M)
        ok = r == naive_rank(rows) and r + len(basis) == nc
        ok = ok and all(all(x == 0 for x in M.apply(v)) for v in basis)
        ok = ok and (not basis or naive_rank(basis) == len(basis))
        n += ok
    assert report("7.7", n == 100, f"kernel vs independent elimination {n}/100")

import itertools
import random
from fractions import Fraction

import pytest

from prelie import catalog
from prelie.algebra import Algebra, associated_lie, change_basis, is_prelie
from prelie.derivations import DEFAULT_WEIGHTS, generalized_derivations, orbit_dim
from prelie.algebra import center, left_annihilator, right_annihilator
from prelie.degeneration import (
    CriteriaConfig,
    Witness,
    act,
    criteria_battery,
    hasse,
    identity_witness,
    limit,
    obstructions,
    scaling_witness,
    verify_witness,
)
from prelie.errors import InconsistentInput
from prelie.exactmath import Diverges, Matrix, RatFunc, UniPoly

from conftest import random_fraction, random_invertible, random_ratfunc_invertible

t = RatFunc.var_power(1)
one, zero = t**0, t * 0
LABELS2 = catalog.dim2_labels()


def constants_str(A):
    return {(i, j, k): str(c) for i, j, k, c in A.nonzero_products()}


def test_act_example():
    At = act(catalog.load("A3"), Witness(Matrix([[one, zero], [t**2, t]])))
    assert constants_str(At) == {
        (1, 1, 1): "1", (1, 1, 2): "t^3 - t",
        (1, 2, 2): "t^2", (2, 1, 2): "t^2", (2, 2, 2): "t",
    }
    assert limit(At).same_constants(catalog.load("A2"))


def test_identity_and_scaling():
    B3 = catalog.load("B3")
    assert limit(act(B3, identity_witness(2))).same_constants(B3)
    At = act(B3, scaling_witness(2))
    for (i, j, k, c), (_, _, _, c0) in zip(At.nonzero_products(), B3.nonzero_products()):
        assert c == t * c0
    assert limit(At).is_zero_algebra()


def test_limit_diverges():
    A = Algebra(1, (((1 / t,),),))
    assert limit(A) is Diverges


def test_verify_examples():
    ws = {(w.source, w.target): w.witness for w in catalog.witnesses()}
    assert verify_witness(catalog.load("B4"), catalog.load("B1(-2)"), ws["B4", "B1(-2)"])
    assert verify_witness(catalog.load("B4"), catalog.load("B2(-1)"), ws["B4", "B2(-1)"])
    assert not verify_witness(catalog.load("A2"), catalog.load("A3"), identity_witness(2))


def test_b4_b2_printed_matrix_lands_in_another_basis():
    printed = Witness(Matrix([[Fraction(1, 2) * one, zero], [Fraction(-1, 2) * one, t]]))
    L = limit(act(catalog.load("B4"), printed))
    assert L is not Diverges and not L.same_constants(catalog.load("B2(-1)"))
    # the constant change (e2, -2 e1) identifies it with B2(-1)
    assert change_basis(L, Matrix([[0, -2], [1, 0]])).same_constants(catalog.load("B2(-1)"))


def test_printed_a3_a5_diverges(frozen):
    assert limit(act(catalog.load("A3"), catalog.printed_a3_a5())) is Diverges
    flipped = Witness(catalog.printed_a3_a5().matrix, inverse_given=False)
    assert limit(act(catalog.load("A3"), flipped)) is Diverges
    assert frozen["printed_a3_a5"] == {"inverse_given": None, "as_g_t": None}


def test_witness_limits_match_oracle(frozen):
    for w in catalog.witnesses(catalog.SAMPLE_ALPHAS, catalog.SAMPLE_BETAS):
        L = limit(act(catalog.load(w.source), w.witness))
        got = {f"{i},{j},{k}": str(c) for i, j, k, c in L.nonzero_products()}
        assert got == frozen["witness_limits"][f"{w.source}->{w.target}"]


@pytest.mark.parametrize("a, b, criterion, text", [
    ("B4", "A4", "c-invariant", "c[1,1]: 9/5 != 2"),
    ("B5", "B1(-1)", "c-invariant", "c[1,1]: 1 != 2"),
    ("B4", "B1(-1/2)", "identity", None),
])
def test_battery_rule_outs(a, b, criterion, text):
    v = criteria_battery(catalog.load(a), catalog.load(b))
    assert v.ruled_out
    hit = [r for r in v.reasons if r.criterion == criterion]
    assert hit
    if text:
        assert hit[0].describe() == text


def test_battery_verified():
    ws = catalog.witnesses_for("A3", "A2")
    v = criteria_battery(catalog.load("A3"), catalog.load("A2"), witnesses=ws)
    assert v.verified and v.witness == ws[0]
    assert criteria_battery(catalog.load("A3"), catalog.load("A2")).status == "undetermined"


def test_battery_detects_contradiction():
    A = catalog.load("A2")
    with pytest.raises(InconsistentInput):
        criteria_battery(A, A, witnesses=[identity_witness(2)])


def test_hasse_rejects_bad_witness():
    algs = [catalog.load("A3"), catalog.load("A2")]
    with pytest.raises(InconsistentInput):
        hasse(algs, [("A3", "A2", identity_witness(2))])


# -- properties -------------------------------------------------------------


def test_group_action_law():
    rng = random.Random(9)
    algebras = [catalog.load(x) for x in LABELS2]
    for k in range(100):
        A = algebras[k % len(algebras)]
        w1 = Witness(random_ratfunc_invertible(rng, 2, 1))
        w2 = Witness(random_ratfunc_invertible(rng, 2, 1), inverse_given=bool(k % 2))
        assert act(act(A, w1), w2) == act(A, w2.compose(w1))


def _degenerating_witness(rng):
    """h = C diag(t^p, t^q) U with C constant and U unipotent polynomial."""
    C = random_invertible(rng, 2).map(lambda x: x * one)
    p, q = rng.randint(0, 2), rng.randint(0, 2)
    D = Matrix([[t**p, zero], [zero, t**q]])
    u = RatFunc(UniPoly([random_fraction(rng) for _ in range(rng.randint(1, 3))]))
    U = Matrix([[one, u], [zero, one]])
    return Witness(C @ D @ U)


def _finite_limits(count):
    rng = random.Random(10)
    algebras = [catalog.load(x) for x in LABELS2]
    out = []
    while len(out) < count:
        A = rng.choice(algebras)
        w = _degenerating_witness(rng)
        L = limit(act(A, w))
        if L is not Diverges:
            out.append((A, w, L))
    return out


def test_limits_are_prelie():
    for _, _, L in _finite_limits(100):
        assert is_prelie(L)


def test_lie_compatibility_random():
    for A, w, L in _finite_limits(100):
        gl = limit(act(associated_lie(A), w))
        assert gl is not Diverges and gl.same_constants(associated_lie(L))


def test_lie_compatibility_catalog():
    for w in catalog.witnesses(catalog.SAMPLE_ALPHAS, catalog.SAMPLE_BETAS, scaling=LABELS2):
        A, B = catalog.load(w.source), catalog.load(w.target)
        assert limit(act(associated_lie(A), w.witness)).same_constants(associated_lie(B))


@pytest.fixture(scope="module")
def dim2_graph():
    algs, ws = catalog.catalog("dim2")
    return hasse(algs, ws), {A.label: A for A in algs}, ws


def test_semicontinuity_audit(dim2_graph):
    H, algs, _ = dim2_graph
    assert len(H.relation) >= 20
    for a, b in H.relation:
        A, B = algs[a], algs[b]
        assert orbit_dim(A) > orbit_dim(B)
        for w in DEFAULT_WEIGHTS:
            assert generalized_derivations(A, w).dim <= generalized_derivations(B, w).dim
        for f in (left_annihilator, right_annihilator, center):
            assert f(A).dim <= f(B).dim


def test_soundness(dim2_graph):
    H, algs, ws = dim2_graph
    for (a, b), v in H.verdicts.items():
        assert not (v.verified and v.ruled_out)
        direct = [w.witness for w in ws if (w.source, w.target) == (a, b)]
        if direct:
            assert not obstructions(algs[a], algs[b])
    assert set(H.relation) == {p for p, v in H.verdicts.items() if v.verified}


def test_partial_order(dim2_graph):
    H, algs, _ = dim2_graph
    rel = H.relation
    for (a, b), (c, d) in itertools.product(rel, rel):
        if b == c:
            assert (a, d) in rel
    assert not any((b, a) in rel for a, b in rel)
    dims = H.orbit_dims()
    assert all(dims[a] > dims[b] for a, b in H.edges)


def test_dot_is_deterministic(dim2_graph):
    H, _, _ = dim2_graph
    algs, ws = catalog.catalog("dim2")
    assert hasse(algs, ws).to_dot() == H.to_dot()
    dot = H.to_dot()
    assert dot.index('"A3"') < dot.index('"A5"') < dot.index('"A1"')
    assert '{ rank=same; "A3"; "B4"; }  // orbit dim 4' in dot


def test_custom_config_is_respected():
    config = CriteriaConfig(word_degrees=(), max_i=0, max_j=0, weights=())
    reasons = obstructions(catalog.load("B4"), catalog.load("A2"), config)
    assert reasons == []

import random
from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from ordkant.barycentric import (
    ConeError,
    ConeOrderedSpace,
    NotAMorphism,
    PointMeasure,
    ambient_l_distance,
    barycenter,
    binary_axiom_check,
    check_strict_monotonicity,
    classify_map,
    cone_leq,
    dl_scaling_check,
    linf_truncated,
    mixture,
    monotone_functionals,
    nonnegative_on_cone,
    orthant,
    push_barycenters,
    separate,
)
from ordkant.instances import (
    random_cone,
    random_cone_vector,
    random_point_measure,
    random_strict_pair,
    random_vector,
)
from ordkant.laws import algebra_laws
from ordkant.storder import NotOrdered

from conftest import seeds

LINE = ConeOrderedSpace(1, ((1,),))
DISCRETE_LINE = ConeOrderedSpace(1, ((1,), (-1,)))


def pm(atoms, weights):
    return PointMeasure(tuple(tuple(a) for a in atoms), tuple(Fr(w) for w in weights))


def test_barycenter_examples():
    assert barycenter(PointMeasure.dirac((3, -1))) == (3, -1)
    assert barycenter(pm([(0, 0), (2, 4)], ["1/2", "1/2"])) == (1, 2)


def test_point_measure_merges_and_checks():
    p = pm([(1,), (1,), (2,)], ["1/4", "1/4", "1/2"])
    assert p.as_dict() == {(1,): Fr(1, 2), (2,): Fr(1, 2)}
    with pytest.raises(ValueError):
        pm([(1,)], ["1/2"])


@given(seeds)
def test_algebra_laws(s):
    rng = random.Random(s)
    assert algebra_laws(rng, rng.randint(1, 4)) == []


def test_cone_leq_examples():
    O = orthant(2)
    assert cone_leq(O, (1, 2), (1, 2))
    assert cone_leq(O, (0, 0), (1, 1))
    assert not cone_leq(O, (0, 0), (1, -1))


def test_non_pointed_cone_rejected():
    with pytest.raises(ConeError):
        ConeOrderedSpace(2, ((1, 0),))
    with pytest.raises(ConeError):
        ConeOrderedSpace(2, ((1, 1), (-1, -1)))


def test_separate_examples():
    assert separate(orthant(2), (1, -1)) == (0, 1)
    assert separate(orthant(3), (0, 0, 0)) is None
    L = linf_truncated(5)
    h = separate(L, (-1, 0, 0, 0, 0))
    assert h is not None and sum(a * b for a, b in zip(h, (-1, 0, 0, 0, 0))) < 0
    assert nonnegative_on_cone(L, h)


def _in_cone_scipy(space, v):
    """Membership by a float LP: min l1 distance from v to the cone."""
    n = space.dim
    A = [[-float(a) for a in r] + [0.0] * n for r in space.rows]
    b = [0.0] * len(space.rows)
    for i in range(n):
        e = [0.0] * (2 * n)
        e[i], e[n + i] = 1.0, -1.0
        A.append(e)
        b.append(float(v[i]))
        e = [0.0] * (2 * n)
        e[i], e[n + i] = -1.0, -1.0
        A.append(e)
        b.append(-float(v[i]))
    res = linprog([0.0] * n + [1.0] * n, A_ub=np.array(A), b_ub=np.array(b),
                  bounds=[(None, None)] * n + [(0, None)] * n, method="highs")
    return res.fun < 1e-9


@given(seeds, st.integers(1, 5))
def test_separation_soundness(s, n):
    rng = random.Random(s)
    C = random_cone(rng, n)
    v = random_vector(rng, n)
    h = separate(C, v)
    assert (h is None) == _in_cone_scipy(C, v)
    if h is not None:
        assert sum(a * b for a, b in zip(h, v)) < 0
        assert max(abs(a) for a in h) == 1
        assert nonnegative_on_cone(C, h)
        for _ in range(5):
            c = random_cone_vector(rng, C, nonzero=False)
            assert sum(a * b for a, b in zip(h, c)) >= 0


@given(seeds, st.integers(1, 4))
def test_order_determined_by_functionals(s, n):
    rng = random.Random(s)
    C = random_cone(rng, n)
    x, y = random_vector(rng, n), random_vector(rng, n)
    if rng.random() < 0.5:
        y = tuple(a + b for a, b in zip(x, random_cone_vector(rng, C)))
    hs = monotone_functionals(C)
    by_functionals = all(
        sum(a * b for a, b in zip(h, x)) <= sum(a * b for a, b in zip(h, y)) for h in hs
    )
    assert by_functionals == cone_leq(C, x, y)


def test_strict_monotonicity_examples():
    p = PointMeasure.dirac((0,))
    assert check_strict_monotonicity(LINE, p, p).holds
    v = check_strict_monotonicity(LINE, p, PointMeasure.dirac((1,)))
    assert v.holds and v.strictly_increasing
    with pytest.raises(NotOrdered):
        check_strict_monotonicity(LINE, PointMeasure.dirac((1,)), p)


@settings(max_examples=30)
@given(seeds, st.integers(1, 6), st.sampled_from(["orthant", "linf"]))
def test_strict_monotonicity_random(s, n, kind):
    rng = random.Random(s)
    C = orthant(n) if kind == "orthant" else linf_truncated(n)
    p, q = random_strict_pair(rng, C, rng.randint(1, 3))
    v = check_strict_monotonicity(C, p, q)
    assert v.holds and not v.measures_equal and not v.barycenters_equal


def test_monotone_barycenter_binary_axiom():
    O = orthant(2)
    res = binary_axiom_check(O, [
        ((0, 0), (1, 1), (5, -5), Fr(1, 2)),
        ((0, 0), (1, 1), (5, -5), 0),
        ((0, 0), (1, 1), (5, -5), 1),
        ((1, 1), (0, 0), (5, -5), Fr(1, 2)),
    ])
    assert res.ok and res.checked == 3 and res.skipped == 1


@given(seeds, st.integers(1, 4))
def test_binary_axiom_random(s, n):
    rng = random.Random(s)
    C = random_cone(rng, n)
    samples = []
    for _ in range(4):
        a = random_vector(rng, n)
        b = tuple(x + y for x, y in zip(a, random_cone_vector(rng, C, nonzero=False)))
        samples.append((a, b, random_vector(rng, n), Fr(rng.randint(0, 4), 4)))
    assert binary_axiom_check(C, samples).ok


SYM = [pm([(-1,), (1,)], ["1/2", "1/2"]), pm([(-2,), (0,), (2,)], ["1/4", "1/2", "1/4"])]


def test_classify_identity_affine():
    assert classify_map(lambda x: x, LINE, LINE, SYM).verdict == "affine"


def test_classify_min_lax_and_max_oplax():
    c = classify_map(lambda x: (min(x[0], 0),), LINE, LINE, SYM)
    assert c.verdict == "lax"
    p = c.certificates["strict"]
    assert barycenter(PointMeasure(tuple((min(a[0], 0),) for a in p.atoms), p.weights)) == (Fr(-1, 2),)
    assert classify_map(lambda x: (max(x[0], 0),), LINE, LINE, SYM).verdict == "oplax"


def test_classify_abs_from_discrete_line():
    assert classify_map(lambda x: (abs(x[0]),), DISCRETE_LINE, LINE, SYM).verdict == "oplax"
    # on the usual order |x| is not monotone
    with pytest.raises(NotAMorphism):
        classify_map(lambda x: (abs(x[0]),), LINE, LINE, SYM)


def test_classify_rejects_long_maps():
    with pytest.raises(NotAMorphism):
        classify_map(lambda x: (2 * x[0],), LINE, LINE, SYM)


def test_classify_both_violated():
    samples = SYM + [pm([(3,), (5,)], ["1/2", "1/2"])]
    f = lambda x: (min(x[0], 0) + max(x[0] - 4, 0),)
    assert classify_map(f, LINE, LINE, samples).verdict == "both-violated"


def test_classify_tabulated_and_domain():
    table = {(-1,): (0,), (1,): (0,), (0,): (0,)}
    assert classify_map(table, LINE, LINE, SYM[:1]).verdict == "affine"
    with pytest.raises(ValueError):
        classify_map(table, LINE, LINE, SYM)
    D = ConeOrderedSpace(1, ((1,),), (((1,), 0),))
    with pytest.raises(ValueError):
        classify_map(lambda x: x, D, LINE, SYM)


@given(st.integers(-3, 3), st.integers(0, 3))
def test_lax_verdict_stable_under_affine_postmap(shift, k):
    f = lambda x: (min(x[0], 0),)
    g = lambda y: (Fr(k, 3) * y[0] + shift,)
    base = classify_map(f, LINE, LINE, SYM).verdict
    composed = classify_map(lambda x: g(f(x)), LINE, LINE, SYM).verdict
    assert base == "lax"
    assert composed == ("affine" if k == 0 else "lax")


def test_scaling_examples():
    x, y, z = (0,), (1,), (7,)
    for a in (0, 1, Fr(1, 2)):
        r = dl_scaling_check(LINE, x, y, z, a)
        assert r.ok
    r = dl_scaling_check(LINE, x, y, z, Fr(1, 2))
    assert r.lhs == r.rhs == 0
    r = dl_scaling_check(LINE, y, x, z, Fr(1, 3))
    assert r.ok and r.lhs == Fr(1, 3)


@settings(max_examples=25)
@given(seeds, st.integers(1, 3))
def test_scaling_random(s, n):
    rng = random.Random(s)
    C = random_cone(rng, n)
    x, y, z = (random_vector(rng, n) for _ in range(3))
    a = Fr(rng.randint(0, 6), 6)
    r = dl_scaling_check(C, x, y, z, a)
    assert r.ok, r
    assert r.rhs == a * ambient_l_distance(C, x, y)


def test_classify_norm_choice():
    # f rotates by 45 degrees and stretches by sqrt(2); g = f / 2 contracts in l2
    R2 = ConeOrderedSpace(2, ((1, 0), (0, 1)))
    f = lambda x: (x[0] - x[1], x[0] + x[1])
    samples = [pm([(0, 0), (1, 0)], ["1/2", "1/2"])]
    with pytest.raises(NotAMorphism):
        classify_map(f, DISCRETE2, R2, samples, norm="l2")
    g = lambda x: (Fr(1, 2) * (x[0] - x[1]), Fr(1, 2) * (x[0] + x[1]))
    assert classify_map(g, DISCRETE2, R2, samples, norm="l2").verdict == "affine"
    with pytest.raises(ValueError):
        classify_map(g, DISCRETE2, R2, samples, norm="l7")


DISCRETE2 = ConeOrderedSpace(2, ((1, 0), (-1, 0), (0, 1), (0, -1)))

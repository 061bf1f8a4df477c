import random
from fractions import Fraction as Fr
from itertools import permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from ordkant.assignment import hungarian
from ordkant.instances import random_measure, random_tuple
from ordkant.lawvere import l_distance
from ordkant.measure import DiscreteMeasure, dirac, empirical
from ordkant.transport import (
    Coupling,
    assignment_distance,
    min_cost_coupling,
    wasserstein,
)

from conftest import rng_space, seeds
from oracles import transport_lp


def chain_pair(ch):
    p = DiscreteMeasure(ch, {"u": Fr(1, 2), "v": Fr(1, 2)})
    q = DiscreteMeasure(ch, {"u": Fr(1, 4), "v": Fr(3, 4)})
    return p, q


def check_coupling(c: Coupling, p, q):
    assert all(m >= 0 for r in c.table for m in r)
    assert c.row_sums() == {x: p[x] for x in c.rows}
    assert c.col_sums() == {y: q[y] for y in c.cols}


def test_identity_coupling(ch):
    p, _ = chain_pair(ch)
    value, c, _ = wasserstein(p, p)
    assert value == 0
    assert c.entries() == [("u", "u", Fr(1, 2)), ("v", "v", Fr(1, 2))]


def test_chain_example(ch):
    p, q = chain_pair(ch)
    # every coupling moves t from u to v with 1/4 <= t <= 1/2; cost is t
    brute = min(Fr(k, 100) for k in range(25, 51))
    value, c, pot = wasserstein(p, q)
    assert value == brute == Fr(1, 4)
    assert ("u", "v", Fr(1, 4)) in c.entries()
    assert dict(pot.f) == {"u": 0, "v": 1}
    assert pot.dual_value(p, q) == value


def test_chain_example_with_l_cost_is_free(ch):
    p, q = chain_pair(ch)
    res = min_cost_coupling(l_distance(ch), p, q)
    assert res.value == 0
    assert res.potential.dual_value(p, q) == 0


def test_dirac_distance(ch):
    assert wasserstein(dirac(ch, "u"), dirac(ch, "v")).value == 1


def test_nonsymmetric_callable_cost(ch):
    p, q = chain_pair(ch)
    res = min_cost_coupling(lambda x, y: 5 if (x, y) == ("u", "v") else (1 if x != y else 2), p, q)
    check_coupling(res.coupling, p, q)
    assert res.value == pytest.approx(transport_lp(
        lambda x, y: 5 if (x, y) == ("u", "v") else (1 if x != y else 2), p, q))
    assert res.potential.dual_value(p, q) == res.value
    assert not res.potential.unified
    with pytest.raises(ValueError):
        res.potential.f


@given(seeds)
def test_wasserstein_against_scipy(s):
    rng, X = rng_space(s, 1, 8)
    p, q = random_measure(rng, X), random_measure(rng, X)
    value, c, pot = wasserstein(p, q)
    check_coupling(c, p, q)
    assert sum(X.d(x, y) * mass for x, y, mass in c.entries()) == value
    assert pot.dual_value(p, q) == value
    assert abs(float(value) - transport_lp(X.d, p, q)) < 1e-9


@given(seeds)
def test_potential_is_short(s):
    rng, X = rng_space(s, 1, 8)
    p, q = random_measure(rng, X), random_measure(rng, X)
    f = wasserstein(p, q).potential.f
    assert all(abs(f[a] - f[b]) <= X.d(a, b) for a, b in product(X.points, repeat=2))
    assert f[p.support[0]] == 0


@given(seeds)
def test_random_cost_matrix_zero_gap(s):
    rng, X = rng_space(s, 1, 7)
    p, q = random_measure(rng, X), random_measure(rng, X)
    C = [[Fr(rng.randint(0, 9), rng.randint(1, 3)) for _ in X.points] for _ in X.points]
    res = min_cost_coupling(C, p, q)
    check_coupling(res.coupling, p, q)
    assert res.potential.dual_value(p, q) == res.value
    pot = res.potential
    for x in p.support:
        for y in q.support:
            assert pot.target[y] - pot.source[x] <= C[X.index[x]][X.index[y]]
    cost = lambda x, y: C[X.index[x]][X.index[y]]
    assert abs(float(res.value) - transport_lp(cost, p, q)) < 1e-9


@given(seeds)
def test_wasserstein_is_a_metric(s):
    rng, X = rng_space(s, 1, 6)
    p, q, r = (random_measure(rng, X) for _ in range(3))
    d = lambda a, b: wasserstein(a, b).value
    assert d(p, q) == d(q, p)
    assert d(p, r) <= d(p, q) + d(q, r)
    assert (d(p, q) == 0) == (p == q)


def test_assignment_examples(ch):
    assert assignment_distance(ch, ("u", "v"), ("u", "v")) == (0, [0, 1])
    assert assignment_distance(ch, ("u", "v"), ("v", "u")) == (0, [1, 0])
    assert assignment_distance(ch, ("u", "u"), ("u", "v"))[0] == Fr(1, 2)


@given(seeds, st.integers(1, 6))
def test_assignment_equals_wasserstein(s, n):
    rng, X = rng_space(s, 1, 6)
    xs, ys = random_tuple(rng, X, n), random_tuple(rng, X, n)
    value, perm = assignment_distance(X, xs, ys)
    assert sorted(perm) == list(range(n))
    assert sum(X.d(xs[i], ys[perm[i]]) for i in range(n)) / n == value
    assert value == wasserstein(empirical(X, xs), empirical(X, ys)).value
    brute = min(sum(X.d(xs[i], ys[s[i]]) for i in range(n)) for s in permutations(range(n)))
    assert value == brute / n


def test_large_assignment_uses_transport_fallback():
    rng, X = rng_space(7, 4, 6)
    xs, ys = random_tuple(rng, X, 70), random_tuple(rng, X, 70)
    value, perm = assignment_distance(X, xs, ys)
    assert sorted(perm) == list(range(70))
    assert value == wasserstein(empirical(X, xs), empirical(X, ys)).value


@given(st.lists(st.lists(st.integers(0, 20), min_size=4, max_size=4), min_size=4, max_size=4))
def test_hungarian_against_bruteforce(cost):
    total, perm = hungarian(cost)
    assert total == min(sum(cost[i][s[i]] for i in range(4)) for s in permutations(range(4)))
    assert sum(cost[i][perm[i]] for i in range(4)) == total


def test_approx_mode_transport():
    from ordkant.ometric import FiniteOrderedMetricSpace

    X = FiniteOrderedMetricSpace.build("abc", [[0, 0.5, 1.0], [0.5, 0, 0.5], [1.0, 0.5, 0]], [[1, 1, 1], [0, 1, 1], [0, 0, 1]], approx=True)
    p = DiscreteMeasure(X, {"a": 0.3, "b": 0.7})
    q = DiscreteMeasure(X, {"c": 1.0})
    res = wasserstein(p, q)
    assert res.value == pytest.approx(0.3 * 1.0 + 0.7 * 0.5)
    assert res.potential.dual_value(p, q) == pytest.approx(res.value)

import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings

from ordkant.instances import random_measure, random_ordered_pair
from ordkant.laws import bimonoidal_laws, monad_laws, monotonicity_laws
from ordkant.measure import (
    DiscreteMeasure,
    MeasureError,
    dirac,
    empirical,
    expectation,
    marginals,
    measure_space,
    nested,
    product,
    pushforward,
)
from ordkant.ometric import FiniteOrderedMetricSpace, tensor
from ordkant.storder import stochastic_leq
from ordkant.transport import wasserstein

from conftest import rng_space, seeds


@pytest.fixture
def wz():
    return FiniteOrderedMetricSpace.build(["w", "z"], [[0, 2], [2, 0]], [[1, 1], [0, 1]])


def m(X, **w):
    return DiscreteMeasure.from_dict(X, {k: Fr(v) for k, v in w.items()})


def test_construction_checks(ch):
    with pytest.raises(MeasureError):
        DiscreteMeasure(ch, {"u": Fr(1, 2)})
    with pytest.raises(MeasureError):
        DiscreteMeasure(ch, {"u": Fr(3, 2), "v": Fr(-1, 2)})
    with pytest.raises(MeasureError):
        DiscreteMeasure(ch, {"nowhere": Fr(1)})
    # zero weights are dropped from the support
    p = DiscreteMeasure(ch, {"u": Fr(0), "v": Fr(1)})
    assert p.support == ["v"] and p == dirac(ch, "v")


def test_dirac(ch):
    assert dirac(ch, "u").weights == {"u": 1}
    assert wasserstein(dirac(ch, "u"), dirac(ch, "v")).value == 1
    assert stochastic_leq(dirac(ch, "u"), dirac(ch, "v"))
    assert not stochastic_leq(dirac(ch, "v"), dirac(ch, "u"))


def test_empirical(ch):
    assert empirical(ch, ("u",)) == dirac(ch, "u")
    assert empirical(ch, ("u", "u", "v", "u")) == m(ch, u="3/4", v="1/4")
    assert empirical(ch, ("u", "v")) == empirical(ch, ("v", "u"))
    with pytest.raises(MeasureError):
        empirical(ch, ())


def test_pushforward(ch, pt):
    p = m(ch, u="1/3", v="2/3")
    assert pushforward(lambda x: x, p, ch) == p
    assert pushforward(lambda x: "*", p, pt) == dirac(pt, "*")
    W = FiniteOrderedMetricSpace.build(["w"], [[0]], [[1]])
    assert pushforward({"u": "w", "v": "w"}, p, W).weights == {"w": 1}


def test_expectation_examples(ch):
    p = m(ch, u="1/2", v="1/2")
    assert expectation(nested([(1, p)])) == p
    mu = nested([(Fr(1, 2), dirac(ch, "u")), (Fr(1, 2), dirac(ch, "v"))])
    assert expectation(mu) == p
    mu = nested([(Fr(1, 2), p), (Fr(1, 2), dirac(ch, "v"))])
    assert expectation(mu) == m(ch, u="1/4", v="3/4")


def test_expectation_needs_nested(ch):
    with pytest.raises(MeasureError):
        expectation(dirac(ch, "u"))


def test_product_examples(ch, wz):
    assert product(dirac(ch, "u"), dirac(wz, "w")) == dirac(tensor(ch, wz), ("u", "w"))
    r = product(m(ch, u="1/2", v="1/2"), m(wz, w="1/3", z="2/3"))
    assert r.weights == {
        ("u", "w"): Fr(1, 6), ("u", "z"): Fr(1, 3), ("v", "w"): Fr(1, 6), ("v", "z"): Fr(1, 3)
    }


def test_marginals_examples(ch, wz):
    T = tensor(ch, wz)
    assert marginals(dirac(T, ("u", "w"))) == (dirac(ch, "u"), dirac(wz, "w"))
    r = DiscreteMeasure(T, {("u", "w"): Fr(1, 2), ("v", "z"): Fr(1, 2)})
    assert marginals(r) == (m(ch, u="1/2", v="1/2"), m(wz, w="1/2", z="1/2"))
    with pytest.raises(MeasureError):
        marginals(dirac(ch, "u"))


def test_measure_space_carries_wasserstein_and_order(ch):
    p, q = m(ch, u="1/2", v="1/2"), m(ch, u="1/4", v="3/4")
    PX = measure_space([p, q])
    assert PX.d(p, q) == Fr(1, 4)
    assert PX.le(p, q) and not PX.le(q, p)


@given(seeds)
def test_monad_laws(s):
    rng, X = rng_space(s, 1, 5)
    assert monad_laws(rng, X) == []


@given(seeds, seeds)
def test_product_then_marginals_is_identity(s1, s2):
    rng, X = rng_space(s1, 1, 5)
    _, Y = rng_space(s2, 1, 4)
    assert bimonoidal_laws(rng, X, Y) == []


@settings(max_examples=25)
@given(seeds, seeds)
def test_monotonicity(s1, s2):
    rng, X = rng_space(s1, 1, 5)
    _, Y = rng_space(s2, 1, 3)
    fails = monotonicity_laws(rng, X, Y)
    assert all(v == [] for v in fails.values()), fails


@given(seeds)
def test_dirac_is_order_embedding(s):
    _, X = rng_space(s, 1, 6)
    for x in X.points:
        for y in X.points:
            assert stochastic_leq(dirac(X, x), dirac(X, y)) == X.le(x, y)


@given(seeds)
def test_integrate_is_linear_in_the_measure(s):
    rng, X = rng_space(s, 1, 6)
    p, q = random_measure(rng, X), random_measure(rng, X)
    f = {x: Fr(rng.randint(-5, 5), 3) for x in X.points}
    mix = expectation(nested([(Fr(1, 3), p), (Fr(2, 3), q)]))
    assert mix.integrate(f) == Fr(1, 3) * p.integrate(f) + Fr(2, 3) * q.integrate(f)

from fractions import Fraction as Fr
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ordkant.numeric import NumericModeError
from ordkant.ometric import (
    FiberError,
    FiniteOrderedMetricSpace,
    PowerSizeError,
    PowerSpace,
    UniformFiberMap,
    power,
    power_embedding,
    tensor,
    validate,
)

from conftest import rng_space, seeds

FOMS = FiniteOrderedMetricSpace


def axioms(space):
    return {v.axiom for v in validate(space)}


def test_point_and_chain_are_valid(pt, ch):
    assert validate(pt) == []
    assert validate(ch) == []


def test_antisymmetry_violation_reported():
    X = FOMS.build(["u", "v"], [[0, 1], [1, 0]], [[1, 1], [1, 1]])
    v = validate(X)
    assert [x.axiom for x in v] == ["antisymmetry"]
    assert set(v[0].indices) == {0, 1}


@pytest.mark.parametrize(
    "dist, leq, expected",
    [
        ([[0, 1], [2, 0]], [[1, 0], [0, 1]], "symmetry"),
        ([[1, 1], [1, 0]], [[1, 0], [0, 1]], "zero-diagonal"),
        ([[0, 0], [0, 0]], [[1, 0], [0, 1]], "positivity"),
        ([[0, 1], [1, 0]], [[0, 0], [0, 1]], "reflexivity"),
    ],
)
def test_single_axiom_violations(dist, leq, expected):
    assert expected in axioms(FOMS.build(["a", "b"], dist, leq))


def test_triangle_and_transitivity_violations():
    d = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
    leq = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    found = axioms(FOMS.build("abc", d, leq))
    assert {"triangle", "transitivity"} <= found


def test_negative_distance():
    assert "nonnegativity" in axioms(FOMS.build("ab", [[0, -1], [-1, 0]], [[1, 0], [0, 1]]))


def test_exact_mode_refuses_floats():
    with pytest.raises(NumericModeError):
        FOMS.build("ab", [[0, 0.5], [0.5, 0]], [[1, 0], [0, 1]])
    X = FOMS.build("ab", [["0", "1/3"], ["1/3", "0"]], [[1, 0], [0, 1]])
    assert X.d("a", "b") == Fr(1, 3)


def test_approx_mode_uses_tolerance():
    X = FOMS.build("abc", [[0, 0.1, 0.3], [0.1, 0, 0.2], [0.3, 0.2, 0]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]], approx=True)
    # 0.1 + 0.2 != 0.3 in binary; the tolerance absorbs it
    assert not X.exact
    assert validate(X) == []


def test_tensor_unit_law(pt, ch):
    T = tensor(pt, ch)
    assert T.size == 2
    for a, b in product(ch.points, repeat=2):
        assert T.d(("*", a), ("*", b)) == ch.d(a, b)
        assert T.le(("*", a), ("*", b)) == ch.le(a, b)


def test_tensor_of_chain(ch):
    T = tensor(ch, ch)
    assert T.size == 4
    assert T.d(("u", "u"), ("v", "v")) == 2
    assert T.le(("u", "v"), ("v", "v"))
    assert not T.le(("u", "v"), ("v", "u")) and not T.le(("v", "u"), ("u", "v"))


def test_power_of_chain(ch):
    P = power(ch, 2)
    assert P.d(("u", "u"), ("v", "v")) == 1
    assert P.d(("u", "u"), ("u", "v")) == Fr(1, 2)
    assert P.le(("u", "u"), ("u", "v"))
    assert not P.le(("u", "v"), ("v", "u"))


def test_power_one_is_base(ch):
    P = power(ch, 1)
    for a, b in product(ch.points, repeat=2):
        assert P.d((a,), (b,)) == ch.d(a, b)
        assert P.le((a,), (b,)) == ch.le(a, b)


def test_power_size_guard(ch):
    with pytest.raises(PowerSizeError):
        power(ch, 17, max_points=10**5)
    # the tuple view still works far past the guard
    V = PowerSpace(ch, 40)
    assert V.distance(("u",) * 40, ("v",) * 40) == 1


def test_power_view_rejects_wrong_length(ch):
    with pytest.raises(ValueError):
        PowerSpace(ch, 2).distance(("u",), ("u", "v"))


@given(seeds, seeds)
def test_tensor_is_valid(s1, s2):
    _, X = rng_space(s1, 1, 4)
    _, Y = rng_space(s2, 1, 4)
    assert validate(tensor(X, Y)) == []


@settings(max_examples=10)
@given(seeds, st.integers(1, 4))
def test_power_is_valid(s, n):
    _, X = rng_space(s, 1, 3)
    assert validate(power(X, n)) == []


def test_uniform_fiber_map_checks():
    phi = UniformFiberMap(4, 2, (0, 0, 1, 1))
    assert phi.fiber(1) == [2, 3]
    with pytest.raises(FiberError):
        UniformFiberMap(4, 2, (0, 0, 0, 1))
    with pytest.raises(FiberError):
        UniformFiberMap(3, 2, (0, 1, 1))
    with pytest.raises(FiberError):
        UniformFiberMap(2, 1, (0, 1))


def test_power_embedding_examples(ch):
    assert power_embedding(UniformFiberMap(2, 1, (0, 0)), ("u",)) == ("u", "u")
    ident = UniformFiberMap(3, 3, (0, 1, 2))
    assert power_embedding(ident, ("u", "v", "u")) == ("u", "v", "u")
    phi = UniformFiberMap(4, 2, (0, 0, 1, 1))
    s, t = ("u", "v"), ("v", "u")
    assert power_embedding(phi, s) == ("u", "u", "v", "v")
    assert PowerSpace(ch, 2).distance(s, t) == 1
    assert PowerSpace(ch, 4).distance(power_embedding(phi, s), power_embedding(phi, t)) == 1


@st.composite
def fiber_maps(draw):
    n = draw(st.integers(1, 3))
    k = draw(st.integers(1, 3))
    assignment = [t for t in range(n) for _ in range(k)]
    perm = draw(st.permutations(assignment))
    return UniformFiberMap(n * k, n, tuple(perm))


@given(seeds, fiber_maps(), st.data())
def test_power_embedding_is_isometric_order_embedding(s, phi, data):
    _, X = rng_space(s, 1, 5)
    tup = st.tuples(*[st.sampled_from(X.points)] * phi.target_size)
    a, b = data.draw(tup), data.draw(tup)
    N, M = PowerSpace(X, phi.target_size), PowerSpace(X, phi.source_size)
    ea, eb = power_embedding(phi, a), power_embedding(phi, b)
    assert M.distance(ea, eb) == N.distance(a, b)
    assert M.le(ea, eb) == N.le(a, b)

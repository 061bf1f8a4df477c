"""Named fixtures and random instance generators (used by tests, scripts and ``laws``)."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iproduct
from math import gcd

from .barycentric import ConeOrderedSpace, PointMeasure, cone_leq, l1_distance_to_cone, linf_truncated, orthant
from .measure import DiscreteMeasure
from .ometric import FiniteOrderedMetricSpace


def chain() -> FiniteOrderedMetricSpace:
    """Two points ``u <= v`` at distance 1."""
    return FiniteOrderedMetricSpace.build(["u", "v"], [[0, 1], [1, 0]], [[1, 1], [0, 1]])


def antichain() -> FiniteOrderedMetricSpace:
    return FiniteOrderedMetricSpace.build(["u", "v"], [[0, 1], [1, 0]], [[1, 0], [0, 1]])


def point() -> FiniteOrderedMetricSpace:
    return FiniteOrderedMetricSpace.build(["*"], [[0]], [[1]])


def _closure(d: list[list]) -> None:
    n = len(d)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]


def truncated_obstruction(n: int) -> FiniteOrderedMetricSpace:
    """Depth-``n`` truncation of the four-sequence space that is not L-ordered.

    Points ``a``, ``d`` and ``a_k, b_k, c_k, d_k`` for ``k = 1..n`` with
    ``d(a_k, a) = d(d_k, d) = d(b_k, c_k) = 1/k``, ``a_k <= b_k``,
    ``c_k <= d_k`` and every other distance 1. Taken literally those
    distances break the triangle inequality (``d(a_j, a_k) = 1`` exceeds
    ``1/j + 1/k``), so the metric used is their shortest-path closure.
    """
    if n < 1:
        raise ValueError("depth must be positive")
    pts = ["a", "d"] + [f"{s}_{k}" for k in range(1, n + 1) for s in "abcd"]
    idx = {p: i for i, p in enumerate(pts)}
    m = len(pts)
    d = [[Fraction(0) if i == j else Fraction(1) for j in range(m)] for i in range(m)]
    leq = [[i == j for j in range(m)] for i in range(m)]
    for k in range(1, n + 1):
        for u, v in ((f"a_{k}", "a"), (f"d_{k}", "d"), (f"b_{k}", f"c_{k}")):
            d[idx[u]][idx[v]] = d[idx[v]][idx[u]] = Fraction(1, k)
        leq[idx[f"a_{k}"]][idx[f"b_{k}"]] = True
        leq[idx[f"c_{k}"]][idx[f"d_{k}"]] = True
    _closure(d)
    return FiniteOrderedMetricSpace.build(pts, d, leq)


def random_order(rng: random.Random, n: int, density: float = 0.35) -> list[list[bool]]:
    """Random partial order: a random DAG on a shuffled ranking, transitively closed."""
    rank = list(range(n))
    rng.shuffle(rank)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                leq[rank[a]][rank[b]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    return leq


def random_space(rng: random.Random, n: int, density: float | None = None) -> FiniteOrderedMetricSpace:
    """Random valid exact space: l1 grid points or a metric with values in [1, 2]."""
    if density is None:
        density = rng.choice([0.0, 0.2, 0.4, 0.7])
    if rng.random() < 0.5:
        pts = set()
        while len(pts) < n:
            pts.add((rng.randint(0, 4), rng.randint(0, 4)))
        pts = sorted(pts)
        d = [[Fraction(abs(a[0] - b[0]) + abs(a[1] - b[1]), 2) for b in pts] for a in pts]
    else:
        d = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                d[i][j] = d[j][i] = 1 + Fraction(rng.randint(0, 6), 6)
    return FiniteOrderedMetricSpace.build([f"x{i}" for i in range(n)], d, random_order(rng, n, density))


def random_measure(rng: random.Random, X: FiniteOrderedMetricSpace, max_support: int = 6) -> DiscreteMeasure:
    k = rng.randint(1, min(max_support, X.size))
    supp = rng.sample(list(X.points), k)
    raw = [rng.randint(1, 6) for _ in supp]
    tot = sum(raw)
    return DiscreteMeasure(X, {x: Fraction(r, tot) for x, r in zip(supp, raw)})


def _above(X, x):
    return [y for y in X.points if X.le(x, y)]


def _below(X, y):
    return [x for x in X.points if X.le(x, y)]


def push_up(rng: random.Random, p: DiscreteMeasure) -> DiscreteMeasure:
    """A measure ``q >= p``: each atom keeps its mass or splits it between two points above."""
    X = p.base
    q: dict = {}
    for x, w in p.weights.items():
        ups = _above(X, x)
        if rng.random() < 0.5:
            y1, y2 = rng.choice(ups), rng.choice(ups)
            q[y1] = q.get(y1, 0) + w / 2
            q[y2] = q.get(y2, 0) + w / 2
        else:
            y = rng.choice(ups)
            q[y] = q.get(y, 0) + w
    return DiscreteMeasure(X, q)


def random_ordered_pair(rng: random.Random, X: FiniteOrderedMetricSpace, max_support: int = 6):
    """``p <= q`` by construction: every atom of ``p`` is pushed to points above it."""
    for _ in range(50):
        p = random_measure(rng, X, max_support)
        q = push_up(rng, p)
        if len(q.support) <= max_support:
            return p, q
    return p, p


def random_tuple(rng: random.Random, X: FiniteOrderedMetricSpace, n: int) -> tuple:
    return tuple(rng.choice(X.points) for _ in range(n))


def random_ordered_tuples(rng: random.Random, X: FiniteOrderedMetricSpace, N: int, M: int):
    """Tuples of lengths N, M with ordered empirical measures.

    A seed tuple of length ``gcd(N, M)`` is repeated and each copy moved down
    (for ``xs``) or up (for ``ys``), then both are shuffled.
    """
    g = gcd(N, M)
    seed = random_tuple(rng, X, g)
    xs = [rng.choice(_below(X, w)) for w in seed for _ in range(N // g)]
    ys = [rng.choice(_above(X, w)) for w in seed for _ in range(M // g)]
    rng.shuffle(xs)
    rng.shuffle(ys)
    return tuple(xs), tuple(ys)


def random_vector(rng: random.Random, n: int, lo: int = -4, hi: int = 4) -> tuple:
    return tuple(Fraction(rng.randint(lo, hi), rng.choice([1, 2, 3])) for _ in range(n))


def random_cone_vector(rng: random.Random, space: ConeOrderedSpace, nonzero: bool = True) -> tuple:
    """Element of the cone: rejection sampling, then l1 projection of random vectors."""
    for _ in range(200):
        v = random_vector(rng, space.dim, -3, 6)
        if cone_leq(space, (0,) * space.dim, v) and (not nonzero or any(v)):
            return v
    for _ in range(50):
        _, c = l1_distance_to_cone(space, random_vector(rng, space.dim, -6, 6))
        if not nonzero or any(c):
            return c
    raise ValueError("could not find a nonzero cone element; is the cone {0}?")


def linf_cone_vector(rng: random.Random, n: int) -> tuple:
    x0 = Fraction(rng.randint(1, 4), rng.choice([1, 2]))
    return (x0,) + tuple(x0 * j * Fraction(rng.randint(-4, 4), 4) for j in range(1, n))


def random_cone(rng: random.Random, n: int) -> ConeOrderedSpace:
    """Orthant, truncated l-infinity cone or a random pointed full-dimensional cone.

    Random rows are oriented to be positive on a random direction ``g``, so
    ``g`` is an interior point and the cone is never just ``{0}``.
    """
    kind = rng.choice(["orthant", "linf", "random"])
    if kind == "orthant" or n < 2:
        return orthant(n)
    if kind == "linf":
        return linf_truncated(n)
    g = tuple(rng.randint(-2, 2) or 1 for _ in range(n))
    while True:
        rows = []
        for _ in range(rng.randint(n, n + 3)):
            r = tuple(rng.randint(-2, 3) for _ in range(n))
            s = sum(a * b for a, b in zip(r, g))
            if s:
                rows.append(r if s > 0 else tuple(-a for a in r))
        try:
            return ConeOrderedSpace(n, tuple(rows))
        except ValueError:
            continue


def random_point_measure(rng: random.Random, n: int, k: int) -> PointMeasure:
    atoms = [random_vector(rng, n) for _ in range(k)]
    raw = [rng.randint(1, 5) for _ in range(k)]
    tot = sum(raw)
    return PointMeasure(tuple(atoms), tuple(Fraction(r, tot) for r in raw))


def random_strict_pair(rng: random.Random, space: ConeOrderedSpace, k: int = 3):
    """``p < q``: atoms of ``p`` moved up by cone vectors, at least one nonzero."""
    gen = (lambda: linf_cone_vector(rng, space.dim)) if space.rows == linf_truncated(space.dim).rows else (
        lambda: random_cone_vector(rng, space)
    )
    p = random_point_measure(rng, space.dim, k)
    moves = [gen() if i == 0 or rng.random() < 0.5 else (0,) * space.dim for i in range(len(p.atoms))]
    atoms = [tuple(a + m for a, m in zip(x, mv)) for x, mv in zip(p.atoms, moves)]
    return p, PointMeasure(tuple(atoms), p.weights)


def grid(n: int, lo: int = -2, hi: int = 2):
    return list(iproduct(range(lo, hi + 1), repeat=n))

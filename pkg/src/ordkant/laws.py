"""Randomized exact-mode law suites: monad, bimonoidal, algebra and monotonicity.

Each suite returns a list of failure descriptions; an empty list means every
instance satisfied its identity.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .barycentric import PointMeasure, barycenter, mixture, push_barycenters
from .instances import random_measure, random_ordered_pair, random_point_measure, random_space
from .lawvere import l_distance
from .measure import (
    DiscreteMeasure,
    dirac,
    expectation,
    marginals,
    measure_space,
    nested,
    product,
    pushforward,
)
from .ometric import FiniteOrderedMetricSpace
from .storder import order_by_coupling


def _random_nested(rng, inner_space, k):
    """Random element of P(inner_space) with support at most k."""
    pts = rng.sample(list(inner_space.points), min(k, inner_space.size))
    raw = [rng.randint(1, 4) for _ in pts]
    tot = sum(raw)
    return DiscreteMeasure(inner_space, {m: Fraction(r, tot) for m, r in zip(pts, raw)})


def monad_laws(rng: random.Random, X: FiniteOrderedMetricSpace) -> list[str]:
    fails = []
    p = random_measure(rng, X, 4)
    if expectation(nested([(1, p)])) != p:
        fails.append(f"E . delta != id at {p}")
    diracs = measure_space(dirac(X, x) for x in p.support)
    if expectation(pushforward(lambda x: dirac(X, x), p, diracs)) != p:
        fails.append(f"E . P(delta) != id at {p}")
    # three levels: a measure over measures over measures on X
    inner = measure_space(random_measure(rng, X, 3) for _ in range(rng.randint(1, 3)))
    middle = measure_space(_random_nested(rng, inner, 2) for _ in range(rng.randint(1, 3)))
    top = _random_nested(rng, middle, 2)
    flat_first = expectation(expectation(top))
    means = measure_space(expectation(nu) for nu in top.support)
    push_first = expectation(pushforward(expectation, top, means))
    if flat_first != push_first:
        fails.append("E . E != E . P(E)")
    return fails


def bimonoidal_laws(rng: random.Random, X: FiniteOrderedMetricSpace, Y: FiniteOrderedMetricSpace) -> list[str]:
    p, q = random_measure(rng, X, 4), random_measure(rng, Y, 4)
    if marginals(product(p, q)) != (p, q):
        return [f"marginals . product != id at {p}, {q}"]
    return []


def algebra_laws(rng: random.Random, dim: int) -> list[str]:
    fails = []
    x = random_point_measure(rng, dim, 1).atoms[0]
    if barycenter(PointMeasure.dirac(x)) != x:
        fails.append(f"e . delta != id at {x}")
    comps = []
    for _ in range(rng.randint(1, 3)):
        comps.append((rng.randint(1, 4), random_point_measure(rng, dim, rng.randint(1, 3))))
    tot = sum(w for w, _ in comps)
    comps = [(Fraction(w, tot), m) for w, m in comps]
    if barycenter(mixture(comps)) != barycenter(push_barycenters(comps)):
        fails.append("e . E != e . P(e)")
    return fails


def line(values) -> FiniteOrderedMetricSpace:
    """Finite subspace of the real line with its usual order."""
    pts = sorted(set(values))
    return FiniteOrderedMetricSpace.build(
        pts, [[abs(a - b) for b in pts] for a in pts], [[a <= b for b in pts] for a in pts]
    )


def random_short_monotone(rng: random.Random, X: FiniteOrderedMetricSpace, k: int = 2) -> dict:
    """Max of a few ``x -> d_L(x, z)``; each is short and monotone, so is the max."""
    L = l_distance(X)
    zs = [rng.choice(X.points) for _ in range(k)]
    shift = Fraction(rng.randint(0, 3), 2)
    return {x: max(L.d(x, z) for z in zs) + shift for x in X.points}


def _leq(p, q) -> bool:
    return order_by_coupling(p, q).verdict


def monotonicity_laws(rng: random.Random, X: FiniteOrderedMetricSpace, Y: FiniteOrderedMetricSpace) -> dict:
    """One instance of each monotonicity property; returns failures per property."""
    fails = {k: [] for k in ("dirac", "pushforward", "expectation", "product", "marginals", "two_functor")}
    x, y = rng.choice(X.points), rng.choice(X.points)
    if _leq(dirac(X, x), dirac(X, y)) != X.le(x, y):
        fails["dirac"].append(f"delta not an order embedding at {x}, {y}")

    f = random_short_monotone(rng, X)
    g0 = random_short_monotone(rng, X)
    g = {a: max(f[a], g0[a]) for a in X.points}  # f <= g pointwise
    R = line(list(f.values()) + list(g.values()))
    p, q = random_ordered_pair(rng, X)
    if not _leq(pushforward(f, p, R), pushforward(f, q, R)):
        fails["pushforward"].append(f"Pf not monotone at {p} <= {q}")
    if not _leq(pushforward(f, p, R), pushforward(g, p, R)):
        fails["two_functor"].append(f"f <= g but Pf(p) not <= Pg(p) at {p}")

    # ordered pair in a finite piece of PPX
    pieces = [random_ordered_pair(rng, X, 3) for _ in range(rng.randint(1, 3))]
    PX = measure_space([m for pair in pieces for m in pair])
    mu, nu = random_ordered_pair(rng, PX, 3)
    if _leq(mu, nu) and not _leq(expectation(mu), expectation(nu)):
        fails["expectation"].append(f"E not monotone at {mu} <= {nu}")

    p2, q2 = random_ordered_pair(rng, Y)
    if not _leq(product(p, p2), product(q, q2)):
        fails["product"].append(f"product not monotone at {p}, {p2}")

    r, s = random_ordered_pair(rng, product(p, p2).base, 4)
    (ra, rb), (sa, sb) = marginals(r), marginals(s)
    if not (_leq(ra, sa) and _leq(rb, sb)):
        fails["marginals"].append(f"marginals not monotone at {r} <= {s}")
    return fails


def run_all(seed: int = 0, count: int = 50, spaces: list | None = None, monotonicity: bool = True) -> dict:
    rng = random.Random(seed)
    report = {"monad": [], "bimonoidal": [], "algebra": []}
    if monotonicity:
        report["monotonicity"] = []
    for _ in range(count):
        X = rng.choice(spaces) if spaces else random_space(rng, rng.randint(1, 5))
        Y = rng.choice(spaces) if spaces else random_space(rng, rng.randint(1, 4))
        report["monad"] += monad_laws(rng, X)
        report["bimonoidal"] += bimonoidal_laws(rng, X, Y)
        report["algebra"] += algebra_laws(rng, rng.randint(1, 4))
        if monotonicity:
            for msgs in monotonicity_laws(rng, X, Y).values():
                report["monotonicity"] += msgs
    return report

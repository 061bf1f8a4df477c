"""Finitely supported probability measures and the structure maps of P.

Measures on measures (elements of PPX) are ordinary :class:`DiscreteMeasure`
values whose base space is materialized by :func:`measure_space` from the
finitely many inner measures involved.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .numeric import to_number
from .ometric import FiniteOrderedMetricSpace, tensor


class MeasureError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Probability measure with finite support on ``base``.

    ``weights`` maps point labels to strictly positive weights summing to 1
    (exactly in exact mode, within the space tolerance otherwise). Zero
    weights are stripped at construction; the mapping is kept in base order.
    """

    base: FiniteOrderedMetricSpace
    weights: Mapping

    def __post_init__(self):
        idx = self.base.index
        clean = {}
        for x, w in self.weights.items():
            if x not in idx:
                raise MeasureError(f"{x!r} is not a point of the base space")
            if w < 0:
                raise MeasureError(f"negative weight at {x!r}")
            if w > self.base.tol:
                clean[x] = w
        if not clean:
            raise MeasureError("empty support")
        total = sum(clean.values())
        if abs(total - 1) > self.base.tol:
            raise MeasureError(f"weights sum to {total}, not 1")
        ordered = dict(sorted(clean.items(), key=lambda kv: idx[kv[0]]))
        object.__setattr__(self, "weights", ordered)

    @classmethod
    def from_dict(cls, base: FiniteOrderedMetricSpace, weights: Mapping) -> "DiscreteMeasure":
        return cls(base, {x: to_number(w, base.exact) for x, w in weights.items()})

    @property
    def support(self) -> list:
        return list(self.weights)

    def __getitem__(self, x):
        return self.weights.get(x, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        if self.base != other.base:
            return False
        if self.base.exact:
            return self.weights == other.weights
        keys = set(self.weights) | set(other.weights)
        return all(abs(self[k] - other[k]) <= self.base.tol for k in keys)

    def __hash__(self) -> int:
        if self.base.exact:
            return hash(frozenset(self.weights.items()))
        return hash(frozenset(self.weights))

    def __repr__(self) -> str:
        body = ", ".join(f"{x!r}: {w}" for x, w in self.weights.items())
        return f"DiscreteMeasure({{{body}}})"

    def integrate(self, f: Callable | Mapping):
        fn = f.__getitem__ if isinstance(f, Mapping) else f
        return sum(w * fn(x) for x, w in self.weights.items())


def dirac(base: FiniteOrderedMetricSpace, x) -> DiscreteMeasure:
    one = Fraction(1) if base.exact else 1.0
    return DiscreteMeasure(base, {x: one})


def empirical(base: FiniteOrderedMetricSpace, tup: Sequence) -> DiscreteMeasure:
    """Uniform measure ``(1/N) sum delta_{x_n}`` of a tuple."""
    if not tup:
        raise MeasureError("empirical distribution of an empty tuple")
    n = len(tup)
    counts = Counter(tup)
    if base.exact:
        return DiscreteMeasure(base, {x: Fraction(c, n) for x, c in counts.items()})
    return DiscreteMeasure(base, {x: c / n for x, c in counts.items()})


def pushforward(f: Callable | Mapping, p: DiscreteMeasure, target: FiniteOrderedMetricSpace) -> DiscreteMeasure:
    fn = f.__getitem__ if isinstance(f, Mapping) else f
    out: dict = {}
    for x, w in p.weights.items():
        y = fn(x)
        out[y] = out.get(y, 0) + w
    return DiscreteMeasure(target, out)


def measure_space(measures: Iterable[DiscreteMeasure]) -> FiniteOrderedMetricSpace:
    """Materialize the finite subspace of PX spanned by the given measures.

    Distances are Wasserstein distances and the order is the stochastic
    order, so the result can itself carry measures (elements of PPX).
    """
    from .storder import order_by_coupling
    from .transport import wasserstein

    pts = list(dict.fromkeys(measures))
    if not pts:
        raise MeasureError("no measures given")
    base = pts[0].base
    if any(m.base != base for m in pts):
        raise MeasureError("measures live on different base spaces")
    n = len(pts)
    dist = [[0] * n for _ in range(n)]
    leq = [[i == j for j in range(n)] for i in range(n)]
    zero = Fraction(0) if base.exact else 0.0
    for i in range(n):
        dist[i][i] = zero
        for j in range(n):
            if i < j:
                dist[i][j] = dist[j][i] = wasserstein(pts[i], pts[j]).value
            if i != j:
                leq[i][j] = order_by_coupling(pts[i], pts[j]).verdict
    return FiniteOrderedMetricSpace(
        tuple(pts), tuple(map(tuple, dist)), tuple(map(tuple, leq)), base.tol
    )


def nested(components: Sequence[tuple]) -> DiscreteMeasure:
    """Build an element of PPX from ``(weight, inner measure)`` pairs."""
    space = measure_space(m for _, m in components)
    out: dict = {}
    for w, m in components:
        out[m] = out.get(m, 0) + w
    return DiscreteMeasure(space, out)


def expectation(mu: DiscreteMeasure) -> DiscreteMeasure:
    """E: PPX -> PX, the mixture ``sum_i w_i * inner_i``."""
    inner = list(mu.weights)
    if not all(isinstance(m, DiscreteMeasure) for m in inner):
        raise MeasureError("expectation needs a measure over measures")
    base = inner[0].base
    if any(m.base != base for m in inner):
        raise MeasureError("inner measures must share a base space")
    out: dict = {}
    for m, w in mu.weights.items():
        for x, v in m.weights.items():
            out[x] = out.get(x, 0) + w * v
    return DiscreteMeasure(base, out)


def product(p: DiscreteMeasure, q: DiscreteMeasure) -> DiscreteMeasure:
    """Independent product on the tensor space."""
    space = tensor(p.base, q.base)
    return DiscreteMeasure(
        space, {(x, y): a * b for x, a in p.weights.items() for y, b in q.weights.items()}
    )


def marginals(r: DiscreteMeasure) -> tuple[DiscreteMeasure, DiscreteMeasure]:
    if r.base.factors is None:
        raise MeasureError("marginals need a measure on a tensor space")
    X, Y = r.base.factors
    px: dict = {}
    py: dict = {}
    for (x, y), w in r.weights.items():
        px[x] = px.get(x, 0) + w
        py[y] = py.get(y, 0) + w
    return DiscreteMeasure(X, px), DiscreteMeasure(Y, py)

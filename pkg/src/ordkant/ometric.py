"""Finite ordered metric spaces, their tensor products and finite powers."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Hashable, Sequence

from .numeric import DEFAULT_TOL, Number, to_number

MAX_POWER_POINTS = 10**5


class PowerSizeError(ValueError):
    """Materializing a power space would exceed the configured bound."""


class FiberError(ValueError):
    """A map between finite sets does not have uniform fibers."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.axiom} at {self.indices}"


@dataclass(frozen=True)
class FiniteOrderedMetricSpace:
    """A finite set with a metric and a partial order.

    ``points`` are opaque hashable labels; ``dist`` and ``leq`` are indexed by
    position in ``points``. ``tol`` is 0 in exact mode, a positive float in
    approximate mode.
    """

    points: tuple
    dist: tuple[tuple[Number, ...], ...]
    leq: tuple[tuple[bool, ...], ...]
    tol: float = 0
    factors: tuple | None = field(default=None, compare=False, repr=False)

    def __hash__(self) -> int:
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.points, self.dist, self.leq, self.tol))
            self.__dict__["_hash"] = h
            return h

    @classmethod
    def build(
        cls,
        points: Sequence[Hashable],
        dist: Sequence[Sequence],
        leq: Sequence[Sequence[bool]],
        approx: bool = False,
        tol: float = DEFAULT_TOL,
    ) -> "FiniteOrderedMetricSpace":
        exact = not approx
        d = tuple(tuple(to_number(v, exact) for v in row) for row in dist)
        o = tuple(tuple(bool(v) for v in row) for row in leq)
        n = len(points)
        if len(set(points)) != n:
            raise ValueError("point labels must be distinct")
        if len(d) != n or any(len(r) != n for r in d) or len(o) != n or any(
            len(r) != n for r in o
        ):
            raise ValueError("dist and leq must be n x n")
        return cls(tuple(points), d, o, tol if approx else 0)

    @property
    def exact(self) -> bool:
        return self.tol == 0

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.points)}

    def d(self, x, y) -> Number:
        return self.dist[self.index[x]][self.index[y]]

    def le(self, x, y) -> bool:
        return self.leq[self.index[x]][self.index[y]]

    @cached_property
    def diameter(self) -> Number:
        return max((max(row) for row in self.dist), default=0)


def validate(space: FiniteOrderedMetricSpace) -> list[Violation]:
    """Return every violated metric or partial-order axiom; empty iff valid."""
    out: list[Violation] = []
    d, o, tol, n = space.dist, space.leq, space.tol, space.size
    for i in range(n):
        if abs(d[i][i]) > tol:
            out.append(Violation("zero-diagonal", (i,)))
        if not o[i][i]:
            out.append(Violation("reflexivity", (i,)))
    for i in range(n):
        for j in range(n):
            if d[i][j] < 0:
                out.append(Violation("nonnegativity", (i, j)))
            if i < j and abs(d[i][j] - d[j][i]) > tol:
                out.append(Violation("symmetry", (i, j)))
            # strictly positive even in approximate mode: tiny but nonzero
            # distances are legitimate points of an approximate space
            if i != j and d[i][j] <= 0:
                out.append(Violation("positivity", (i, j)))
            if i < j and o[i][j] and o[j][i]:
                out.append(Violation("antisymmetry", (i, j)))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d[i][k] > d[i][j] + d[j][k] + tol:
                    out.append(Violation("triangle", (i, j, k)))
                if o[i][j] and o[j][k] and not o[i][k]:
                    out.append(Violation("transitivity", (i, j, k)))
    return out


def is_valid(space: FiniteOrderedMetricSpace) -> bool:
    return not validate(space)


@lru_cache(maxsize=256)
def tensor(X: FiniteOrderedMetricSpace, Y: FiniteOrderedMetricSpace) -> FiniteOrderedMetricSpace:
    """l1-sum metric and product order on pairs ``(x, y)``."""
    pts = [(x, y) for x in X.points for y in Y.points]
    idx = [(i, j) for i in range(X.size) for j in range(Y.size)]
    dist = tuple(
        tuple(X.dist[i][k] + Y.dist[j][l] for (k, l) in idx) for (i, j) in idx
    )
    leq = tuple(
        tuple(X.leq[i][k] and Y.leq[j][l] for (k, l) in idx) for (i, j) in idx
    )
    return FiniteOrderedMetricSpace(tuple(pts), dist, leq, max(X.tol, Y.tol), factors=(X, Y))


@dataclass(frozen=True)
class PowerSpace:
    """``X^N`` as a view over tuples: mean componentwise distance, product order."""

    base: FiniteOrderedMetricSpace
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("power exponent must be positive")

    def distance(self, s: Sequence, t: Sequence) -> Number:
        self._check(s)
        self._check(t)
        return sum(self.base.d(a, b) for a, b in zip(s, t)) / self.n

    def le(self, s: Sequence, t: Sequence) -> bool:
        self._check(s)
        self._check(t)
        return all(self.base.le(a, b) for a, b in zip(s, t))

    def _check(self, s):
        if len(s) != self.n:
            raise ValueError(f"tuple of length {len(s)} is not a point of X^{self.n}")

    def materialize(self, max_points: int = MAX_POWER_POINTS) -> FiniteOrderedMetricSpace:
        if self.base.size**self.n > max_points:
            raise PowerSizeError(
                f"|X|^N = {self.base.size}^{self.n} exceeds {max_points}; use the tuple view"
            )
        pts = list(iproduct(self.base.points, repeat=self.n))
        dist = tuple(tuple(self.distance(s, t) for t in pts) for s in pts)
        leq = tuple(tuple(self.le(s, t) for t in pts) for s in pts)
        return FiniteOrderedMetricSpace(tuple(pts), dist, leq, self.base.tol)


def power(X: FiniteOrderedMetricSpace, n: int, max_points: int = MAX_POWER_POINTS) -> FiniteOrderedMetricSpace:
    return PowerSpace(X, n).materialize(max_points)


@dataclass(frozen=True)
class UniformFiberMap:
    """A surjection ``{0..source_size-1} -> {0..target_size-1}`` with equal fibers."""

    source_size: int
    target_size: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if self.source_size < 1 or self.target_size < 1:
            raise FiberError("sizes must be positive")
        if len(self.assignment) != self.source_size:
            raise FiberError("assignment must have one entry per source element")
        if self.source_size % self.target_size:
            raise FiberError(f"{self.target_size} does not divide {self.source_size}")
        counts = [0] * self.target_size
        for t in self.assignment:
            if not 0 <= t < self.target_size:
                raise FiberError(f"target {t} out of range")
            counts[t] += 1
        want = self.source_size // self.target_size
        bad = [t for t, c in enumerate(counts) if c != want]
        if bad:
            raise FiberError(f"fibers over {bad} do not have cardinality {want}")

    def __call__(self, m: int) -> int:
        return self.assignment[m]

    def fiber(self, t: int) -> list[int]:
        return [m for m, s in enumerate(self.assignment) if s == t]


def power_embedding(phi: UniformFiberMap, tup: Sequence) -> tuple:
    """Precompose a point of ``X^N`` with ``phi: M -> N``, giving a point of ``X^M``."""
    if len(tup) != phi.target_size:
        raise ValueError(f"tuple has length {len(tup)}, expected {phi.target_size}")
    return tuple(tup[phi(m)] for m in range(phi.source_size))

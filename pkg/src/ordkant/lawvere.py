"""L-distance of an ordered metric space, Lawvere metric spaces and the S functor."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Mapping, Sequence

from . import lp
from .numeric import DEFAULT_TOL, Number, to_number
from .ometric import FiniteOrderedMetricSpace, Violation


@dataclass(frozen=True)
class LawvereSpace:
    """Finite set with an asymmetric, zero-diagonal, triangle-inequality distance."""

    points: tuple
    dl: tuple[tuple[Number, ...], ...]
    tol: float = 0

    @classmethod
    def build(cls, points: Sequence[Hashable], dl, approx: bool = False, tol: float = DEFAULT_TOL):
        m = tuple(tuple(to_number(v, not approx) for v in row) for row in dl)
        n = len(points)
        if len(set(points)) != n or len(m) != n or any(len(r) != n for r in m):
            raise ValueError("dl must be n x n over distinct labels")
        return cls(tuple(points), m, tol if approx else 0)

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.points)}

    @property
    def size(self) -> int:
        return len(self.points)

    def d(self, x, y) -> Number:
        return self.dl[self.index[x]][self.index[y]]


def validate_lawvere(space: LawvereSpace) -> list[Violation]:
    out = []
    d, n, tol = space.dl, space.size, space.tol
    for i in range(n):
        if abs(d[i][i]) > tol:
            out.append(Violation("zero-diagonal", (i,)))
        for j in range(n):
            if d[i][j] < 0:
                out.append(Violation("nonnegativity", (i, j)))
            if d[i][j] != d[i][j] or d[i][j] in (float("inf"), float("-inf")):
                out.append(Violation("finiteness", (i, j)))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d[i][k] > d[i][j] + d[j][k] + tol:
                    out.append(Violation("triangle", (i, j, k)))
    return out


def _edge_weights(X: FiniteOrderedMetricSpace) -> list[list]:
    zero = X.dist[0][0] * 0 if X.size else 0
    return [
        [zero if X.leq[i][j] else X.dist[i][j] for j in range(X.size)]
        for i in range(X.size)
    ]


@lru_cache(maxsize=512)
def l_distance(X: FiniteOrderedMetricSpace) -> LawvereSpace:
    """Shortest paths over metric edges (both ways) and zero-cost upward edges."""
    w = _edge_weights(X)
    n = X.size
    for k in range(n):
        wk = w[k]
        for i in range(n):
            wik = w[i][k]
            wi = w[i]
            for j in range(n):
                alt = wik + wk[j]
                if alt < wi[j]:
                    wi[j] = alt
    return LawvereSpace(X.points, tuple(tuple(r) for r in w), X.tol)


def dl_potentials_from(X: FiniteOrderedMetricSpace, x) -> tuple[dict, dict]:
    """Solve the potential LP for source ``x`` against every target at once.

    Maximizing ``sum_y (f(x) - f(y))`` over short monotone ``f`` is dual to
    routing one unit from ``x`` to each other point along metric and upward
    arcs. The simplex duals give a single witness ``f`` with
    ``f(x) - f(y) = d_L(x, y)`` for every ``y`` simultaneously.

    Returns ``(values, witness)``; the witness is shifted so its minimum is 0.
    """
    if not X.exact:
        raise ValueError("the potential LP runs in exact mode only")
    n = X.size
    s = X.index[x]
    w = _edge_weights(X)
    cols, cost = [], []
    for u in range(n):
        for v in range(n):
            if u != v:
                cols.append((u, v))
                cost.append(w[u][v])
    A = [[Fraction(0)] * len(cols) for _ in range(n)]
    for k, (u, v) in enumerate(cols):
        A[u][k] += 1
        A[v][k] -= 1
    b = [Fraction(n - 1) if v == s else Fraction(-1) for v in range(n)]
    res = lp.solve_standard(cost, A, b)
    if not res.ok:  # pragma: no cover - the program is always feasible and bounded
        raise RuntimeError(f"potential LP {res.status}")
    f = res.duals
    lo = min(f)
    witness = {X.points[v]: f[v] - lo for v in range(n)}
    values = {X.points[v]: f[s] - f[v] for v in range(n)}
    _check_witness(X, witness, w)
    return values, witness


def _check_witness(X, f: Mapping, w) -> None:
    pts = X.points
    for i, a in enumerate(pts):
        for j, b in enumerate(pts):
            if f[a] - f[b] > w[i][j]:
                raise RuntimeError(f"potential witness violates constraint at {a!r}, {b!r}")


def dl_via_potentials(X: FiniteOrderedMetricSpace, x, y) -> tuple[Fraction, dict]:
    """``max f(x) - f(y)`` over short monotone ``f``, with an attaining witness."""
    if x == y:
        return Fraction(0), {p: Fraction(0) for p in X.points}
    values, witness = dl_potentials_from(X, x)
    return values[y], witness


def is_l_ordered(X: FiniteOrderedMetricSpace) -> tuple[bool, tuple | None]:
    """Check ``d_L(x, y) = 0  =>  x <= y``; return a counterexample pair on failure."""
    L = l_distance(X)
    for i in range(X.size):
        for j in range(X.size):
            if abs(L.dl[i][j]) <= X.tol and not X.leq[i][j]:
                return False, (X.points[i], X.points[j])
    return True, None


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def symmetrize(L: LawvereSpace) -> FiniteOrderedMetricSpace:
    """Quotient by mutual zero distance; max-symmetrized metric, order from zeros.

    Each class is labelled by its first member.
    """
    n, tol, d = L.size, L.tol, L.dl
    uf = _UnionFind(n)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(d[i][j]) <= tol and abs(d[j][i]) <= tol:
                uf.union(i, j)
    reps = sorted({uf.find(i) for i in range(n)})
    dist = tuple(tuple(max(d[a][b], d[b][a]) for b in reps) for a in reps)
    leq = tuple(tuple(abs(d[a][b]) <= tol for b in reps) for a in reps)
    return FiniteOrderedMetricSpace(tuple(L.points[a] for a in reps), dist, leq, tol)


def check_lawvere_morphism(f: Callable | Mapping, src: LawvereSpace, dst: LawvereSpace) -> bool:
    """True iff ``f`` does not increase the Lawvere distance of any pair."""
    fn = f.__getitem__ if isinstance(f, Mapping) else f
    img = [dst.index[fn(x)] for x in src.points]
    tol = max(src.tol, dst.tol)
    for i in range(src.size):
        for j in range(src.size):
            if dst.dl[img[i]][img[j]] > src.dl[i][j] + tol:
                return False
    return True


def yoneda_check(L: LawvereSpace, x, y) -> bool:
    """``d(x, y) = max_z d(x, z) - d(y, z)``, the maximum attained at ``z = y``."""
    i, j = L.index[x], L.index[y]
    d = L.dl
    best = max(d[i][k] - d[j][k] for k in range(L.size))
    at_y = d[i][j] - d[j][j]
    tol = L.tol
    return abs(best - d[i][j]) <= tol and abs(at_y - d[i][j]) <= tol

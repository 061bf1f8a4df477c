"""Optimal transport between finitely supported measures.

The solver is a transportation (network) simplex on the bipartite graph
support(p) x support(q), exact over rationals, with Bland's rule. Dual
potentials come from the final spanning tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .assignment import hungarian
from .lawvere import LawvereSpace
from .measure import DiscreteMeasure
from .ometric import FiniteOrderedMetricSpace

HUNGARIAN_MAX = 64


@dataclass(frozen=True)
class Coupling:
    """Transport plan; ``table[i][j]`` is the mass moved from ``rows[i]`` to ``cols[j]``."""

    rows: tuple
    cols: tuple
    table: tuple[tuple, ...]

    def entries(self) -> list[tuple]:
        """Nonzero entries as ``(x, y, mass)`` in row-major order."""
        return [
            (x, y, m)
            for x, r in zip(self.rows, self.table)
            for y, m in zip(self.cols, r)
            if m
        ]

    def row_sums(self) -> dict:
        return {x: sum(r) for x, r in zip(self.rows, self.table)}

    def col_sums(self) -> dict:
        return {y: sum(r[j] for r in self.table) for j, y in enumerate(self.cols)}


@dataclass(frozen=True)
class Potential:
    """Dual certificate of a transport problem.

    ``target(y) - source(x) <= c(x, y)`` on every pair and the optimum equals
    ``sum target dq - sum source dp``. When the cost is a Lawvere metric on
    the base (zero diagonal, triangle inequality) both maps are the same
    function on every base point; ``f`` then exposes it.
    """

    source: Mapping
    target: Mapping
    unified: bool

    @property
    def f(self) -> Mapping:
        if not self.unified:
            raise ValueError("potential is two-sided for this cost")
        return self.source

    def dual_value(self, p: DiscreteMeasure, q: DiscreteMeasure):
        return q.integrate(self.target) - p.integrate(self.source)


@dataclass(frozen=True)
class TransportResult:
    value: object
    coupling: Coupling
    potential: Potential

    def __iter__(self):
        return iter((self.value, self.coupling, self.potential))


def _cost_matrix(cost, base: FiniteOrderedMetricSpace) -> list[list]:
    if isinstance(cost, FiniteOrderedMetricSpace):
        return [list(r) for r in cost.dist]
    if isinstance(cost, LawvereSpace):
        return [list(r) for r in cost.dl]
    if callable(cost):
        return [[cost(x, y) for y in base.points] for x in base.points]
    return [list(r) for r in cost]


def _is_lawvere(c: Sequence[Sequence], tol) -> bool:
    n = len(c)
    if any(abs(c[i][i]) > tol for i in range(n)):
        return False
    for k in range(n):
        for i in range(n):
            cik = c[i][k]
            for j in range(n):
                if c[i][j] > cik + c[k][j] + tol:
                    return False
    return True


def _transportation_simplex(C, supply, demand, tol):
    """Return ``(flows, u, v)`` with ``u_i + v_j <= C_ij``, equality on the basis."""
    m, n = len(supply), len(demand)
    zero = supply[0] - supply[0]
    x = [[zero] * n for _ in range(m)]
    basic = set()
    # north-west corner, keeping exactly m+n-1 basic cells
    a, b = list(supply), list(demand)
    i = j = 0
    while i < m and j < n:
        t = min(a[i], b[j])
        x[i][j] = t
        basic.add((i, j))
        a[i] -= t
        b[j] -= t
        if i == m - 1 and j == n - 1:
            break
        if (a[i] <= tol and i < m - 1) or j == n - 1:
            i += 1
        else:
            j += 1
    while True:
        # potentials on the spanning tree: u_i + v_j = C_ij
        u = [None] * m
        v = [None] * n
        u[0] = zero
        by_row = [[] for _ in range(m)]
        by_col = [[] for _ in range(n)]
        for (r, s) in basic:
            by_row[r].append(s)
            by_col[s].append(r)
        stack = [("r", 0)]
        while stack:
            kind, k = stack.pop()
            if kind == "r":
                for s in by_row[k]:
                    if v[s] is None:
                        v[s] = C[k][s] - u[k]
                        stack.append(("c", s))
            else:
                for r in by_col[k]:
                    if u[r] is None:
                        u[r] = C[r][k] - v[k]
                        stack.append(("r", r))
        enter = None
        for r in range(m):
            for s in range(n):
                if (r, s) not in basic and C[r][s] - u[r] - v[s] < -tol:
                    enter = (r, s)
                    break
            if enter:
                break
        if enter is None:
            return x, u, v
        cycle = _tree_path(by_row, by_col, enter)
        minus = cycle[1::2]
        theta = min(x[r][s] for r, s in minus)
        leave = min((c for c in minus if x[c[0]][c[1]] - theta <= tol), key=lambda c: c[0] * n + c[1])
        for k, (r, s) in enumerate(cycle):
            if k % 2 == 0:
                x[r][s] += theta
            else:
                x[r][s] -= theta
        x[leave[0]][leave[1]] = zero
        basic.remove(leave)
        basic.add(enter)


def _tree_path(by_row, by_col, enter):
    """Cycle of cells through ``enter``: entering cell, then tree path col -> row."""
    r0, s0 = enter
    # search from column s0 back to row r0 through basic cells
    prev = {("c", s0): None}
    stack = [("c", s0)]
    while stack:
        node = stack.pop()
        kind, k = node
        if node == ("r", r0):
            break
        nbrs = [("r", r) for r in by_col[k]] if kind == "c" else [("c", s) for s in by_row[k]]
        for nb in nbrs:
            if nb not in prev:
                prev[nb] = node
                stack.append(nb)
    path = []
    node = ("r", r0)
    while node is not None:
        path.append(node)
        node = prev[node]
    # path runs row r0 -> ... -> column s0; convert consecutive node pairs to cells
    cells = [enter]
    for a, b in zip(path, path[1:]):
        cells.append((a[1], b[1]) if a[0] == "r" else (b[1], a[1]))
    return cells


def min_cost_coupling(cost, p: DiscreteMeasure, q: DiscreteMeasure) -> TransportResult:
    """Minimum expected cost over couplings of ``p`` and ``q``.

    ``cost`` is an n x n matrix over base indices, a callable on labels, a
    LawvereSpace or a FiniteOrderedMetricSpace (meaning its metric). The cost
    need not be symmetric.
    """
    if p.base != q.base:
        raise ValueError("measures live on different spaces")
    base = p.base
    tol = base.tol
    C_full = _cost_matrix(cost, base)
    idx = base.index
    rows, cols = p.support, q.support
    ri = [idx[x] for x in rows]
    ci = [idx[y] for y in cols]
    C = [[C_full[i][j] for j in ci] for i in ri]
    supply = [p.weights[x] for x in rows]
    demand = [q.weights[y] for y in cols]
    flows, u, v = _transportation_simplex(C, supply, demand, tol)
    value = sum(C[i][j] * flows[i][j] for i in range(len(rows)) for j in range(len(cols)))
    coupling = Coupling(tuple(rows), tuple(cols), tuple(tuple(r) for r in flows))

    src = [-a for a in u]
    shift = src[0]
    src = [a - shift for a in src]
    tgt = [b - shift for b in v]
    trusted = isinstance(cost, (FiniteOrderedMetricSpace, LawvereSpace))
    if trusted or _is_lawvere(C_full, tol):
        # c-transform: one function on the whole base, anchored at rows[0]
        F = [
            min(src[k] + C_full[ri[k]][z] for k in range(len(rows)))
            for z in range(base.size)
        ]
        shift = F[ri[0]]
        f = {base.points[z]: F[z] - shift for z in range(base.size)}
        pot = Potential(f, f, True)
    else:
        pot = Potential(dict(zip(rows, src)), dict(zip(cols, tgt)), False)
    return TransportResult(value, coupling, pot)


def wasserstein(p: DiscreteMeasure, q: DiscreteMeasure) -> TransportResult:
    """Earth mover's distance with the metric of the base as cost."""
    return min_cost_coupling(p.base, p, q)


def assignment_distance(space: FiniteOrderedMetricSpace, xs: Sequence, ys: Sequence):
    """``(1/N) min_sigma sum d(x_n, y_sigma(n))`` and an optimal permutation."""
    n = len(xs)
    if n != len(ys) or n == 0:
        raise ValueError("tuples must be nonempty and of equal length")
    cost = [[space.d(a, b) for b in ys] for a in xs]
    if n <= HUNGARIAN_MAX:
        total, perm = hungarian(cost)
        return total / n, perm
    # larger instances: the transportation solver on the index level; its
    # basic optimal solutions are permutation matrices
    unit = Fraction(1, n) if space.exact else 1 / n
    flows, _, _ = _transportation_simplex(cost, [unit] * n, [unit] * n, space.tol)
    perm = [max(range(n), key=lambda j: flows[i][j]) for i in range(n)]
    return sum(cost[i][perm[i]] for i in range(n)) / n, perm

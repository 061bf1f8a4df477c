"""Stochastic order on finitely supported measures.

Three independent deciders (coupling feasibility, upper-set enumeration,
zero-cost transport under the L-distance), the splitting constructions for
empirical measures, order-density approximation and the marginal lift.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Mapping, Sequence

from .flow import FlowNetwork, hopcroft_karp
from .lawvere import is_l_ordered, l_distance
from .measure import DiscreteMeasure, empirical
from .numeric import common_denominator, to_number
from .ometric import FiniteOrderedMetricSpace, PowerSpace, UniformFiberMap, tensor
from .transport import Coupling, assignment_distance, min_cost_coupling

UPPER_SET_MAX_POINTS = 16


class OracleBoundError(ValueError):
    """Upper-set enumeration refused: the space is too large."""


class NotLOrdered(ValueError):
    """The duality decider needs an L-ordered space."""


class NotOrdered(ValueError):
    """A construction that needs ``p <= q`` was given an unordered pair."""

    def __init__(self, message: str, witness: "OrderWitness"):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class OrderWitness:
    """Verdict of a decider together with re-checkable evidence.

    ``coupling`` backs a positive verdict; ``upper_set`` (with ``p(C) > q(C)``)
    or ``function`` (short, monotone, ``gap = int f dp - int f dq > 0``) back a
    negative one.
    """

    verdict: bool
    method: str
    coupling: Coupling | None = None
    upper_set: tuple | None = None
    function: Mapping | None = None
    gap: object = None

    def __bool__(self) -> bool:
        return self.verdict

    def verify(self, p: DiscreteMeasure, q: DiscreteMeasure) -> bool:
        X = p.base
        tol = X.tol
        if self.coupling is not None:
            if not self.verdict:
                return False
            c = self.coupling
            rs, cs = c.row_sums(), c.col_sums()
            if any(abs(rs.get(x, 0) - p[x]) > tol for x in set(rs) | set(p.support)):
                return False
            if any(abs(cs.get(y, 0) - q[y]) > tol for y in set(cs) | set(q.support)):
                return False
            return all(m >= -tol for r in c.table for m in r) and all(
                X.le(x, y) for x, y, m in c.entries() if m > tol
            )
        if self.upper_set is not None:
            C = set(self.upper_set)
            upward = all(y in C for x in C for y in X.points if X.le(x, y))
            return not self.verdict and upward and sum(p[x] for x in C) > sum(q[x] for x in C) + tol
        if self.function is not None:
            f = self.function
            pts = X.points
            short = all(abs(f[a] - f[b]) <= X.d(a, b) + tol for a in pts for b in pts)
            mono = all(f[a] <= f[b] + tol for a in pts for b in pts if X.le(a, b))
            gap = p.integrate(f) - q.integrate(f)
            return not self.verdict and short and mono and gap > tol and abs(gap - self.gap) <= tol
        if self.method == "uppersets" and self.verdict:
            # exhaustive verdict: the evidence is the enumeration itself
            return order_by_upper_sets(p, q).verdict
        return False


def _same_base(p, q):
    if p.base != q.base:
        raise ValueError("measures live on different spaces")


def order_by_coupling(p: DiscreteMeasure, q: DiscreteMeasure) -> OrderWitness:
    """Max-flow feasibility of a coupling supported on ``{x <= y}``."""
    _same_base(p, q)
    X = p.base
    rows, cols = p.support, q.support
    m, n = len(rows), len(cols)
    s, t = 0, m + n + 1
    net = FlowNetwork(m + n + 2)
    for i, x in enumerate(rows):
        net.add_arc(s, 1 + i, p.weights[x])
    mid = {}
    for i, x in enumerate(rows):
        for j, y in enumerate(cols):
            if X.le(x, y):
                mid[i, j] = net.add_arc(1 + i, 1 + m + j, None)
    for j, y in enumerate(cols):
        net.add_arc(1 + m + j, t, q.weights[y])
    value = net.max_flow(s, t, X.tol)
    if abs(value - 1) > X.tol:
        # min cut: upper closure of the reachable sources has p(C) > q(C)
        side = net.reachable(s, X.tol)
        gens = [X.index[x] for i, x in enumerate(rows) if 1 + i in side]
        up = tuple(y for j, y in enumerate(X.points) if any(X.leq[a][j] for a in gens))
        return OrderWitness(False, "coupling", upper_set=up)
    zero = value - value
    table = tuple(
        tuple(net.flow_on(mid[i, j]) if (i, j) in mid else zero for j in range(n))
        for i in range(m)
    )
    return OrderWitness(True, "coupling", coupling=Coupling(tuple(rows), tuple(cols), table))


def _antichains(X: FiniteOrderedMetricSpace):
    n = X.size
    comparable = [[X.leq[i][j] or X.leq[j][i] for j in range(n)] for i in range(n)]

    def extend(chosen: list[int], start: int):
        yield chosen
        for k in range(start, n):
            if not any(comparable[k][c] for c in chosen):
                yield from extend(chosen + [k], k + 1)

    yield from extend([], 0)


def order_by_upper_sets(
    p: DiscreteMeasure, q: DiscreteMeasure, max_points: int = UPPER_SET_MAX_POINTS
) -> OrderWitness:
    """Check ``p(C) <= q(C)`` on every upper set, each generated by an antichain."""
    _same_base(p, q)
    X = p.base
    if X.size > max_points:
        raise OracleBoundError(f"upper-set oracle limited to {max_points} points, got {X.size}")
    pw = [p[x] for x in X.points]
    qw = [q[x] for x in X.points]
    for chain in _antichains(X):
        up = [j for j in range(X.size) if any(X.leq[a][j] for a in chain)]
        if sum(pw[j] for j in up) > sum(qw[j] for j in up) + X.tol:
            return OrderWitness(False, "uppersets", upper_set=tuple(X.points[j] for j in up))
    return OrderWitness(True, "uppersets")


def order_by_duality(p: DiscreteMeasure, q: DiscreteMeasure) -> OrderWitness:
    """``p <= q`` iff optimal transport under the L-distance costs exactly 0.

    A negative verdict carries the negated optimal potential, a short monotone
    function integrating strictly larger against ``p`` than against ``q``.
    """
    _same_base(p, q)
    X = p.base
    if not X.exact:
        ok, pair = is_l_ordered(X)
        if not ok:
            raise NotLOrdered(f"space is not L-ordered: d_L{pair} vanishes but no order")
    res = min_cost_coupling(l_distance(X), p, q)
    if abs(res.value) <= X.tol:
        return OrderWitness(True, "duality", coupling=res.coupling)
    f = {x: -v for x, v in res.potential.f.items()}
    return OrderWitness(False, "duality", function=f, gap=res.value)


def stochastic_leq(p: DiscreteMeasure, q: DiscreteMeasure) -> bool:
    return order_by_coupling(p, q).verdict


METHODS = {
    "coupling": order_by_coupling,
    "uppersets": order_by_upper_sets,
    "duality": order_by_duality,
}


@dataclass(frozen=True)
class Split:
    """Common refinement ``K`` with ``xs[phi(k)] <= ys[psi(k)]`` for every ``k``."""

    size: int
    phi: UniformFiberMap
    psi: UniformFiberMap

    def pairs(self, xs: Sequence, ys: Sequence) -> list[tuple]:
        return [(xs[self.phi(k)], ys[self.psi(k)]) for k in range(self.size)]


def _refuse(p, q, what):
    raise NotOrdered(f"{what}: the empirical measures are not ordered", order_by_duality(p, q))


def split(X: FiniteOrderedMetricSpace, xs: Sequence, ys: Sequence) -> Split:
    """Splitting for ordered empirical measures of tuples of lengths N and M.

    ``K`` has ``lcm(N, M)`` elements: an integral flow sends ``M/g`` units out
    of every index of ``xs`` and ``N/g`` units into every index of ``ys``
    (``g = gcd(N, M)``) along ordered index pairs.
    """
    p, q = empirical(X, xs), empirical(X, ys)
    if not order_by_coupling(p, q).verdict:
        _refuse(p, q, "split")
    N, M = len(xs), len(ys)
    g = gcd(N, M)
    K = N * M // g
    net = FlowNetwork(N + M + 2)
    s, t = 0, N + M + 1
    for i in range(N):
        net.add_arc(s, 1 + i, M // g)
    arcs = {}
    for i in range(N):
        for j in range(M):
            if X.le(xs[i], ys[j]):
                arcs[i, j] = net.add_arc(1 + i, 1 + N + j, None)
    for j in range(M):
        net.add_arc(1 + N + j, t, N // g)
    if net.max_flow(s, t) != K:  # pragma: no cover - integrality of max flow
        raise RuntimeError("index-level flow is not saturating")
    phi, psi = [], []
    for (i, j), k in arcs.items():
        c = int(net.flow_on(k))
        phi += [i] * c
        psi += [j] * c
    return Split(K, UniformFiberMap(K, N, tuple(phi)), UniformFiberMap(K, M, tuple(psi)))


def _index_coupling(X, xs, ys, coupling: Coupling):
    """Spread a point-level coupling evenly over the indices carrying each point."""
    mult_x = {x: xs.count(x) for x in set(xs)}
    mult_y = {y: ys.count(y) for y in set(ys)}
    mass = {(x, y): m for x, y, m in coupling.entries()}
    return [
        [mass.get((a, b), 0) / (mult_x[a] * mult_y[b]) for b in ys] for a in xs
    ]


def permutation_split(X: FiniteOrderedMetricSpace, xs: Sequence, ys: Sequence) -> list[int]:
    """Permutation ``sigma`` with ``xs[n] <= ys[sigma[n]]`` for all ``n``.

    The index-level coupling is bistochastic up to the factor ``1/N``, so its
    support carries a perfect matching (Birkhoff-von Neumann).
    """
    if len(xs) != len(ys):
        raise ValueError("tuples must have equal length")
    p, q = empirical(X, xs), empirical(X, ys)
    w = order_by_coupling(p, q)
    if not w.verdict:
        _refuse(p, q, "permutation_split")
    R = _index_coupling(X, list(xs), list(ys), w.coupling)
    N = len(xs)
    edges = [[j for j in range(N) if R[i][j] > X.tol] for i in range(N)]
    match = hopcroft_karp(N, N, edges)
    if any(m is None for m in match):  # pragma: no cover - Birkhoff guarantees a matching
        raise RuntimeError("no perfect matching on the coupling support")
    return list(match)


def order_density_approx(p: DiscreteMeasure, q: DiscreteMeasure, eps) -> tuple[tuple, tuple]:
    """Componentwise-ordered tuples whose empirical measures approximate ``p``, ``q``.

    Exact mode represents the ordered coupling exactly with N its common
    denominator. Approximate mode picks the least N with
    ``(#pairs) * diam / N < eps`` and rounds by largest remainders.
    """
    eps = to_number(eps, p.base.exact)
    if not eps > 0:
        raise ValueError("eps must be positive")
    w = order_by_coupling(p, q)
    if not w.verdict:
        _refuse(p, q, "order_density_approx")
    X = p.base
    entries = w.coupling.entries()
    if X.exact:
        N = common_denominator(m for _, _, m in entries)
        counts = [int(m * N) for _, _, m in entries]
    else:
        N = floor(len(entries) * X.diameter / eps) + 1
        raw = [m * N for _, _, m in entries]
        counts = [floor(r) for r in raw]
        rest = N - sum(counts)
        order = sorted(range(len(raw)), key=lambda k: (-(raw[k] - counts[k]), k))
        for k in order[:rest]:
            counts[k] += 1
    xs, ys = [], []
    for (x, y, _), c in zip(entries, counts):
        xs += [x] * c
        ys += [y] * c
    return tuple(xs), tuple(ys)


@dataclass(frozen=True)
class Lift:
    tuple: tuple
    sigma: list[int]
    sigma_prime: list[int]
    distance: object


def marginal_lift(
    X: FiniteOrderedMetricSpace,
    Y: FiniteOrderedMetricSpace,
    rbar: Sequence[tuple],
    pbar: Sequence,
    qbar: Sequence,
) -> Lift:
    """Lift ``(pbar, qbar)`` to a pair tuple close to ``rbar``.

    ``s[n] = (pbar[sigma(n)], qbar[sigma'(n)])`` where ``sigma`` and ``sigma'``
    are optimal assignments of the coordinates of ``rbar`` to ``pbar`` and
    ``qbar``; ``d(rbar, s)`` is the sum of the two assignment optima.
    """
    N = len(rbar)
    if not (N == len(pbar) == len(qbar)) or N == 0:
        raise ValueError("rbar, pbar and qbar must be nonempty and of equal length")
    _, sigma = assignment_distance(X, [r[0] for r in rbar], pbar)
    _, sigma2 = assignment_distance(Y, [r[1] for r in rbar], qbar)
    s = tuple((pbar[sigma[n]], qbar[sigma2[n]]) for n in range(N))
    dist = PowerSpace(tensor(X, Y), N).distance(tuple(rbar), s)
    return Lift(s, sigma, sigma2, dist)


@dataclass(frozen=True)
class AntisymmetryVerdict:
    leq: bool
    geq: bool
    equal: bool
    witness: OrderWitness | None = None

    @property
    def consistent(self) -> bool:
        """False only if both directions hold for distinct measures."""
        return not (self.leq and self.geq) or self.equal


def check_antisymmetry(p: DiscreteMeasure, q: DiscreteMeasure) -> AntisymmetryVerdict:
    a = order_by_duality(p, q)
    b = order_by_duality(q, p)
    witness = b if (a.verdict and not b.verdict) else None
    return AntisymmetryVerdict(a.verdict, b.verdict, p == q, witness)

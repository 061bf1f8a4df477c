"""Cone-ordered finite-dimensional spaces as algebras of the probability monad.

A space is ``Q^n`` with the order ``x <= y`` iff ``A (y - x) >= 0`` for the
rows of ``A`` (a polyhedral cone). The algebra map sends a finitely
supported measure to its barycenter. Distances are l1 throughout so that
every check stays rational.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import lp
from .lawvere import l_distance
from .measure import DiscreteMeasure
from .numeric import to_number
from .ometric import FiniteOrderedMetricSpace
from .storder import NotOrdered, order_by_coupling, order_by_duality

Vector = tuple


class ConeError(ValueError):
    pass


class NotAMorphism(ValueError):
    """A candidate map is not short or not monotone on the sampled points."""


def _vec(v) -> Vector:
    return tuple(to_number(a) for a in v)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def l1(a: Sequence, b: Sequence):
    return sum((abs(x - y) for x, y in zip(a, b)), Fraction(0))


def _sq_l2(a: Sequence, b: Sequence):
    return sum(((x - y) ** 2 for x, y in zip(a, b)), Fraction(0))


def _linf(a: Sequence, b: Sequence):
    return max((abs(x - y) for x, y in zip(a, b)), default=Fraction(0))


# distances for "short" checks; l2 is compared through squares so it stays exact
NORMS = {"l1": l1, "l2": _sq_l2, "linf": _linf}


def _rank(rows: Sequence[Sequence]) -> int:
    M = [list(r) for r in rows]
    rank = 0
    ncol = len(M[0]) if M else 0
    for col in range(ncol):
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class ConeOrderedSpace:
    """``Q^dim`` ordered by the cone ``{x : row . x >= 0 for every row}``.

    ``domain`` holds optional convex constraints ``(b, c)`` meaning
    ``b . x >= c``. The cone must be pointed so the order is antisymmetric.
    """

    dim: int
    rows: tuple
    domain: tuple = field(default=())

    def __post_init__(self):
        rows = tuple(_vec(r) for r in self.rows)
        if any(len(r) != self.dim for r in rows):
            raise ConeError("cone rows must have length dim")
        dom = tuple((_vec(b), to_number(c)) for b, c in self.domain)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "domain", dom)
        # cone ∩ -cone = ker A, trivial iff A has full column rank
        if _rank(rows) < self.dim:
            raise ConeError("cone is not pointed: the induced order is not antisymmetric")

    def contains(self, x: Sequence) -> bool:
        return all(dot(b, x) >= c for b, c in self.domain)


def orthant(n: int) -> ConeOrderedSpace:
    return ConeOrderedSpace(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def linf_truncated(n: int) -> ConeOrderedSpace:
    """``{x : x_0 >= |x_j| / j, j = 1..n-1}`` in ``Q^n`` (just ``x_0 >= 0`` when n = 1)."""
    if n == 1:
        return orthant(1)
    rows = []
    for j in range(1, n):
        for s in (1, -1):
            r = [Fraction(0)] * n
            r[0] = Fraction(1)
            r[j] = Fraction(s, j)
            rows.append(tuple(r))
    return ConeOrderedSpace(n, tuple(rows))


@dataclass(frozen=True)
class PointMeasure:
    """Finitely supported probability measure on vectors; duplicate atoms merge."""

    atoms: tuple
    weights: tuple

    def __post_init__(self):
        merged: dict = {}
        if len(self.atoms) != len(self.weights):
            raise ValueError("atoms and weights differ in length")
        for a, w in zip(self.atoms, self.weights):
            w = to_number(w)
            if w < 0:
                raise ValueError("negative weight")
            if w:
                a = _vec(a)
                merged[a] = merged.get(a, 0) + w
        if not merged or sum(merged.values()) != 1:
            raise ValueError("weights must be nonnegative and sum to 1")
        object.__setattr__(self, "atoms", tuple(merged))
        object.__setattr__(self, "weights", tuple(merged.values()))

    @classmethod
    def dirac(cls, x) -> "PointMeasure":
        return cls((x,), (1,))

    def as_dict(self) -> dict:
        return dict(zip(self.atoms, self.weights))


def barycenter(p: PointMeasure) -> Vector:
    n = len(p.atoms[0])
    return tuple(sum((w * a[i] for a, w in zip(p.atoms, p.weights)), Fraction(0)) for i in range(n))


def mixture(components: Sequence[tuple]) -> PointMeasure:
    """Flatten ``(weight, PointMeasure)`` pairs (the monad multiplication)."""
    atoms, weights = [], []
    for w, m in components:
        for a, v in zip(m.atoms, m.weights):
            atoms.append(a)
            weights.append(to_number(w) * v)
    return PointMeasure(tuple(atoms), tuple(weights))


def push_barycenters(components: Sequence[tuple]) -> PointMeasure:
    """Push the outer measure forward along the barycenter map."""
    return PointMeasure(tuple(barycenter(m) for _, m in components), tuple(w for w, _ in components))


def cone_leq(space: ConeOrderedSpace, x: Sequence, y: Sequence) -> bool:
    diff = sub(y, x)
    return all(dot(a, diff) >= 0 for a in space.rows)


def monotone_functionals(space: ConeOrderedSpace) -> tuple:
    """Generators of the dual cone; together they determine the order."""
    return space.rows


def _normalize(h: Sequence) -> Vector:
    m = max(abs(a) for a in h)
    return tuple(a / m for a in h)


def separate(space: ConeOrderedSpace, v: Sequence) -> Vector | None:
    """Monotone linear functional strictly negative at ``v``, or None if ``v`` is in the cone.

    Minimizes ``h . v`` over convex combinations ``h`` of the cone rows, so
    ``h >= 0`` on the cone by construction. The result is rescaled to max
    absolute coefficient 1 (a norm proxy that keeps it rational).
    """
    v = _vec(v)
    rows = space.rows
    if not rows:
        return None
    c = [dot(a, v) for a in rows]
    res = lp.minimize(c, A_eq=[[1] * len(rows)], b_eq=[1])
    if res.value >= 0:
        return None
    h = tuple(sum((mu * a[i] for mu, a in zip(res.x, rows)), Fraction(0)) for i in range(space.dim))
    return _normalize(h)


def nonnegative_on_cone(space: ConeOrderedSpace, h: Sequence) -> bool:
    """LP check of ``h . x >= 0`` for all cone points, over the box ``|x_i| <= 1``."""
    n = space.dim
    A_ub = [[-a for a in r] for r in space.rows]
    b_ub = [0] * len(space.rows)
    for i in range(n):
        e = [0] * n
        e[i] = 1
        A_ub.append(e)
        b_ub.append(1)
        A_ub.append([-a for a in e])
        b_ub.append(1)
    res = lp.minimize(list(h), A_ub=A_ub, b_ub=b_ub, free=range(n))
    return res.ok and res.value >= 0


def l1_distance_to_cone(space: ConeOrderedSpace, v: Sequence) -> tuple[Fraction, Vector]:
    """``min ||v - c||_1`` over cone points ``c``, with a minimizer."""
    n = space.dim
    v = _vec(v)
    # variables: c (free, n), t (>= 0, n)
    A_ub, b_ub = [], []
    for i in range(n):
        row = [0] * (2 * n)
        row[i], row[n + i] = -1, -1
        A_ub.append(row)
        b_ub.append(-v[i])
        row = [0] * (2 * n)
        row[i], row[n + i] = 1, -1
        A_ub.append(row)
        b_ub.append(v[i])
    for r in space.rows:
        A_ub.append([-a for a in r] + [0] * n)
        b_ub.append(0)
    res = lp.minimize([0] * n + [1] * n, A_ub=A_ub, b_ub=b_ub, free=range(n))
    return res.value, tuple(res.x[:n])


def ambient_l_distance(space: ConeOrderedSpace, x: Sequence, y: Sequence) -> Fraction:
    """L-distance in the whole ordered l1 space: distance from ``y - x`` to the cone."""
    return l1_distance_to_cone(space, sub(y, x))[0]


def induced_space(space: ConeOrderedSpace, points: Sequence[Sequence]) -> FiniteOrderedMetricSpace:
    """Finite ordered metric space on the given vectors (l1 metric, cone order)."""
    pts = list(dict.fromkeys(_vec(p) for p in points))
    dist = tuple(tuple(l1(a, b) for b in pts) for a in pts)
    leq = tuple(tuple(cone_leq(space, a, b) for b in pts) for a in pts)
    return FiniteOrderedMetricSpace(tuple(pts), dist, leq)


def _as_discrete(X: FiniteOrderedMetricSpace, p: PointMeasure) -> DiscreteMeasure:
    return DiscreteMeasure(X, p.as_dict())


@dataclass(frozen=True)
class StrictMonotonicityVerdict:
    barycenters_equal: bool
    measures_equal: bool
    strictly_increasing: bool

    @property
    def holds(self) -> bool:
        if self.barycenters_equal and not self.measures_equal:
            return False
        return self.measures_equal or self.strictly_increasing


def check_strict_monotonicity(space: ConeOrderedSpace, p: PointMeasure, q: PointMeasure) -> StrictMonotonicityVerdict:
    """For ``p <= q``: equal barycenters force ``p = q``, else ``e(p) < e(q)``."""
    X = induced_space(space, p.atoms + q.atoms)
    dp, dq = _as_discrete(X, p), _as_discrete(X, q)
    w = order_by_coupling(dp, dq)
    if not w.verdict:
        raise NotOrdered("check_strict_monotonicity needs p <= q", order_by_duality(dp, dq))
    ep, eq = barycenter(p), barycenter(q)
    return StrictMonotonicityVerdict(
        ep == eq, dp == dq, ep != eq and cone_leq(space, ep, eq)
    )


@dataclass(frozen=True)
class Classification:
    verdict: str  # "affine", "lax", "oplax" or "both-violated"
    certificates: dict


def _evaluator(f: Callable | Mapping):
    if isinstance(f, Mapping):
        table = {_vec(k): _vec(v) for k, v in f.items()}

        def fn(x):
            try:
                return table[_vec(x)]
            except KeyError:
                raise ValueError(f"function not tabulated at {x}") from None

        return fn
    return lambda x: _vec(f(_vec(x)))


def classify_map(
    f: Callable | Mapping,
    space_in: ConeOrderedSpace,
    space_out: ConeOrderedSpace,
    samples: Sequence[PointMeasure],
    norm: str = "l1",
) -> Classification:
    """Compare ``e(Pf p)`` with ``f(e p)`` over sample measures.

    ``lax`` means ``e(Pf p) <= f(e p)`` on every sample (concave-like),
    ``oplax`` the reverse inequality. This refutes, it does not prove: a
    ``lax`` verdict only says no sample contradicts it. ``norm`` (``l1``,
    ``l2`` or ``linf``) is the metric used to check that ``f`` is short.
    """
    if norm not in NORMS:
        raise ValueError(f"unknown norm {norm!r}; use one of {sorted(NORMS)}")
    dist = NORMS[norm]
    fn = _evaluator(f)
    pts = list(dict.fromkeys(a for p in samples for a in p.atoms))
    pts += [b for b in dict.fromkeys(barycenter(p) for p in samples) if b not in pts]
    for x in pts:
        if not space_in.contains(x):
            raise ValueError(f"{x} lies outside the input domain")
    img = {x: fn(x) for x in pts}
    for a in pts:
        for b in pts:
            if dist(img[a], img[b]) > dist(a, b):
                raise NotAMorphism(f"not short between {a} and {b}")
            if cone_leq(space_in, a, b) and not cone_leq(space_out, img[a], img[b]):
                raise NotAMorphism(f"not monotone on {a} <= {b}")
    rels = []
    for p in samples:
        lhs = barycenter(PointMeasure(tuple(img[a] for a in p.atoms), p.weights))
        rhs = img[barycenter(p)]
        rels.append((p, lhs, rhs, cone_leq(space_out, lhs, rhs), cone_leq(space_out, rhs, lhs)))
    not_le = [r for r in rels if not r[3]]
    not_ge = [r for r in rels if not r[4]]
    if not not_le and not not_ge:
        return Classification("affine", {})
    if not not_le:
        return Classification("lax", {"strict": not_ge[0][0]})
    if not not_ge:
        return Classification("oplax", {"strict": not_le[0][0]})
    return Classification("both-violated", {"refutes_lax": not_le[0][0], "refutes_oplax": not_ge[0][0]})


@dataclass(frozen=True)
class AxiomCheck:
    ok: bool
    checked: int
    skipped: int
    failures: list


def binary_axiom_check(space: ConeOrderedSpace, samples: Sequence[tuple]) -> AxiomCheck:
    """``a <= b  =>  la + (1-l)c <= lb + (1-l)c`` for samples ``(a, b, c, l)``.

    Each instance is cross-checked against monotonicity of the barycenter on
    ``l delta_a + (1-l) delta_c <= l delta_b + (1-l) delta_c``.
    """
    failures, checked, skipped = [], 0, 0
    for a, b, c, lam in samples:
        a, b, c, lam = _vec(a), _vec(b), _vec(c), to_number(lam)
        if not 0 <= lam <= 1:
            raise ValueError("mixing weight must lie in [0, 1]")
        if not cone_leq(space, a, b):
            skipped += 1
            continue
        checked += 1
        left = tuple(lam * s + (1 - lam) * t for s, t in zip(a, c))
        right = tuple(lam * s + (1 - lam) * t for s, t in zip(b, c))
        direct = cone_leq(space, left, right)
        P = PointMeasure((a, c), (lam, 1 - lam))
        Q = PointMeasure((b, c), (lam, 1 - lam))
        X = induced_space(space, [a, b, c])
        stoch = order_by_coupling(_as_discrete(X, P), _as_discrete(X, Q)).verdict
        via_e = cone_leq(space, barycenter(P), barycenter(Q))
        if not (direct and stoch and via_e):
            failures.append((a, b, c, lam))
    return AxiomCheck(not failures, checked, skipped, failures)


@dataclass(frozen=True)
class ScalingCheck:
    ok: bool
    lhs: Fraction
    rhs: Fraction
    ambient_lhs: Fraction
    ambient_rhs: Fraction


def dl_scaling_check(space: ConeOrderedSpace, x, y, z, alpha) -> ScalingCheck:
    """``d_L(a x + (1-a) z, a y + (1-a) z) = a d_L(x, y)`` on a finite subspace.

    The subspace holds x, y, z, the two mixtures, and the points reached from
    ``x`` and from ``a x + (1-a) z`` by the optimal upward move toward ``y``;
    with those, the finite L-distances coincide with the ambient ones.
    """
    x, y, z, a = _vec(x), _vec(y), _vec(z), to_number(alpha)
    if not 0 <= a <= 1:
        raise ValueError("alpha must lie in [0, 1]")

    def mix(u, v):
        return tuple(a * s + (1 - a) * t for s, t in zip(u, v))

    amb, c = l1_distance_to_cone(space, sub(y, x))
    w = tuple(s + t for s, t in zip(x, c))
    xa, ya, wa = mix(x, z), mix(y, z), mix(w, z)
    X = induced_space(space, [x, y, z, xa, ya, w, wa])
    L = l_distance(X)
    lhs = L.d(xa, ya)
    rhs = a * L.d(x, y)
    amb_lhs = ambient_l_distance(space, xa, ya)
    ok = lhs == rhs and lhs == amb_lhs and rhs == a * amb
    return ScalingCheck(ok, lhs, rhs, amb_lhs, a * amb)

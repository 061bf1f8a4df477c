"""Dense two-phase simplex over exact rationals with Bland's rule.

Small problems only (tens of rows, a few hundred columns). Returns primal
solution and the dual vector of the equality rows so callers can read off
certificates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: list | None = None
    value: Fraction | None = None
    duals: list | None = None

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


def _pivot(T: list[list], basis: list[int], r: int, j: int) -> None:
    row = T[r]
    piv = row[j]
    if piv != 1:
        T[r] = row = [v / piv for v in row]
    nz = [k for k, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i == r:
            continue
        f = other[j]
        if f:
            for k in nz:
                other[k] -= f * row[k]
    basis[r] = j


def _run(T, basis, obj, allowed: int) -> str:
    """Minimize; ``obj`` is the reduced-cost row (last entry: -objective)."""
    m = len(basis)
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        T.append(obj)
        _pivot(T, basis, leave, enter)
        obj[:] = T.pop()


def solve_standard(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b``, ``x >= 0``.

    The returned ``duals`` ``y`` satisfy ``y.A_j <= c_j`` for every column and
    ``y.b`` equals the optimum.
    """
    m, n = len(A), len(c)
    c = [Fraction(v) for v in c]
    sign = [1] * m
    T = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]] + [ZERO] * m + [Fraction(b[i])]
        if row[-1] < 0:
            sign[i] = -1
            row = [-v for v in row]
        row[n + i] = Fraction(1)
        T.append(row)
    basis = [n + i for i in range(m)]

    # phase 1: drive artificial variables to zero
    obj = [ZERO] * (n + m + 1)
    for row in T:
        for k in range(n):
            obj[k] -= row[k]
        obj[-1] -= row[-1]
    _run(T, basis, obj, n)
    if obj[-1] != 0:
        return LPResult("infeasible")
    for i in range(m):
        if basis[i] >= n:
            j = next((k for k in range(n) if T[i][k] != 0), None)
            if j is not None:
                T.append(obj)
                _pivot(T, basis, i, j)
                obj = T.pop()
            # otherwise the row is redundant; the artificial stays basic at zero

    # phase 2
    cost = c + [ZERO] * m
    obj = cost + [ZERO]
    for i, row in enumerate(T):
        cb = cost[basis[i]]
        if cb:
            for k in range(n + m + 1):
                obj[k] -= cb * row[k]
    status = _run(T, basis, obj, n)
    if status != "optimal":
        return LPResult(status)

    x = [ZERO] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    # B^{-1} sits in the artificial columns
    duals = []
    for k in range(m):
        y = sum((cost[basis[i]] * T[i][n + k] for i in range(m)), ZERO)
        duals.append(sign[k] * y)
    return LPResult("optimal", x, sum((ci * xi for ci, xi in zip(c, x)), ZERO), duals)


def minimize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Minimize ``c.x`` s.t. ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are nonnegative except those listed in ``free``. Duals are
    returned for the ``A_ub`` rows followed by the ``A_eq`` rows (``<= 0`` on
    the inequality rows for a minimization).
    """
    n = len(c)
    free = sorted(set(free))
    ncol = n + len(free) + len(A_ub)
    rows, rhs = [], []

    def expand(row):
        out = [Fraction(v) for v in row] + [ZERO] * (ncol - n)
        for k, j in enumerate(free):
            out[n + k] = -out[j]
        return out

    for i, row in enumerate(A_ub):
        r = expand(row)
        r[n + len(free) + i] = Fraction(1)
        rows.append(r)
        rhs.append(b_ub[i])
    for i, row in enumerate(A_eq):
        rows.append(expand(row))
        rhs.append(b_eq[i])
    cc = expand(c)
    for k in range(len(A_ub)):
        cc[n + len(free) + k] = ZERO
    res = solve_standard(cc, rows, rhs)
    if not res.ok:
        return res
    x = res.x[:n]
    for k, j in enumerate(free):
        x[j] -= res.x[n + k]
    return LPResult("optimal", x, res.value, res.duals)

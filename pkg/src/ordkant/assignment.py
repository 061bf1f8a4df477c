"""Hungarian method (shortest augmenting path form) over exact rationals."""
from __future__ import annotations

from typing import Sequence

INF = float("inf")


def hungarian(cost: Sequence[Sequence]) -> tuple[object, list[int]]:
    """Minimum-cost perfect assignment of an n x n cost matrix.

    Returns ``(total, perm)`` with ``perm[i]`` the column assigned to row ``i``.
    Works with any ordered field type (Fraction or float).
    """
    n = len(cost)
    if n == 0:
        return 0, []
    zero = cost[0][0] - cost[0][0]
    # 1-based potentials; column 0 is the virtual start
    u = [zero] * (n + 1)
    v = [zero] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    perm = [0] * n
    for j in range(1, n + 1):
        perm[p[j] - 1] = j - 1
    total = sum((cost[i][perm[i]] for i in range(n)), zero)
    return total, perm

"""Exact max-flow (highest-label push-relabel) and bipartite matching."""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Sequence


class FlowNetwork:
    """Residual network with paired forward/backward arcs.

    Capacities may be Fractions, ints or floats; ``None`` means unbounded and
    is replaced by a finite bound exceeding any feasible flow.
    """

    def __init__(self, n: int):
        self.n = n
        self.head: list[int] = []
        self.cap: list = []
        self.orig: list = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_arc(self, u: int, v: int, cap) -> int:
        k = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.orig += [cap, 0]
        self.adj[u].append(k)
        self.adj[v].append(k + 1)
        return k

    def flow_on(self, k: int):
        return self.orig[k] - self.cap[k]

    def max_flow(self, s: int, t: int, tol: float = 0):
        """Run push-relabel with highest-label selection; return the flow value."""
        finite = [c for c in self.orig if c is not None]
        big = sum(finite, Fraction(0) if all(isinstance(c, (int, Fraction)) for c in finite) else 0.0) + 1
        for k, c in enumerate(self.orig):
            if c is None:
                self.orig[k] = self.cap[k] = big
        n = self.n
        height = [0] * n
        excess = [0] * n
        height[s] = n
        current = [0] * n
        for k in self.adj[s]:
            c = self.cap[k]
            if c > 0:
                v = self.head[k]
                self.cap[k] -= c
                self.cap[k ^ 1] += c
                excess[v] += c
                excess[s] -= c

        def active(u):
            return u != s and u != t and excess[u] > tol

        while True:
            cand = [u for u in range(n) if active(u)]
            if not cand:
                break
            u = max(cand, key=lambda w: (height[w], -w))
            # discharge u
            while excess[u] > tol:
                arcs = self.adj[u]
                if current[u] == len(arcs):
                    height[u] = 1 + min(
                        height[self.head[k]] for k in arcs if self.cap[k] > tol
                    )
                    current[u] = 0
                    continue
                k = arcs[current[u]]
                v = self.head[k]
                if self.cap[k] > tol and height[u] == height[v] + 1:
                    delta = min(excess[u], self.cap[k])
                    self.cap[k] -= delta
                    self.cap[k ^ 1] += delta
                    excess[u] -= delta
                    excess[v] += delta
                else:
                    current[u] += 1
        return excess[t]

    def reachable(self, s: int, tol: float = 0) -> set[int]:
        """Vertices reachable from ``s`` in the residual network (min-cut side)."""
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for k in self.adj[u]:
                v = self.head[k]
                if v not in seen and self.cap[k] > tol:
                    seen.add(v)
                    stack.append(v)
        return seen


def hopcroft_karp(n_left: int, n_right: int, edges: Sequence[Sequence[int]]) -> list[int | None]:
    """Maximum matching; ``edges[i]`` lists right neighbours of left vertex ``i``.

    Returns ``match[i]`` (right vertex or None) for every left vertex.
    """
    INF = n_left + n_right + 1
    match_l: list[int | None] = [None] * n_left
    match_r: list[int | None] = [None] * n_right
    dist = [0] * n_left

    def bfs() -> bool:
        q = deque()
        for i in range(n_left):
            if match_l[i] is None:
                dist[i] = 0
                q.append(i)
            else:
                dist[i] = INF
        found = False
        while q:
            i = q.popleft()
            for j in edges[i]:
                k = match_r[j]
                if k is None:
                    found = True
                elif dist[k] == INF:
                    dist[k] = dist[i] + 1
                    q.append(k)
        return found

    def dfs(i: int) -> bool:
        for j in edges[i]:
            k = match_r[j]
            if k is None or (dist[k] == dist[i] + 1 and dfs(k)):
                match_l[i] = j
                match_r[j] = i
                return True
        dist[i] = INF
        return False

    while bfs():
        for i in range(n_left):
            if match_l[i] is None:
                dfs(i)
    return match_l

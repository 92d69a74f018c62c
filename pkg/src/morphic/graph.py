"""Occurrence digraphs of non-negative matrices: strongly connected components and their periods.

Vertices are matrix indices.  There is an edge ``j -> i`` whenever
``M[i, j] > 0``, i.e. letter ``i`` occurs in the image of letter ``j``.
"""
from __future__ import annotations

from collections import deque
from math import gcd
from typing import Sequence

import numpy as np


def successors(M: np.ndarray) -> list[list[int]]:
    n = M.shape[0]
    return [[i for i in range(n) if M[i, j] > 0] for j in range(n)]


def tarjan(succ: Sequence[Sequence[int]]) -> list[list[int]]:
    """Strongly connected components, emitted sinks first (reverse topological order)."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            nbrs = succ[v]
            while pos < len(nbrs):
                w = nbrs[pos]
                pos += 1
                if index[w] == -1:
                    work.append((v, pos))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


class Condensation:
    """SCC condensation of an occurrence digraph."""

    def __init__(self, succ: Sequence[Sequence[int]]):
        self.succ = [list(s) for s in succ]
        self.components = tarjan(self.succ)
        self.comp_of = [0] * len(self.succ)
        for c, comp in enumerate(self.components):
            for v in comp:
                self.comp_of[v] = c
        self.dag: list[set[int]] = [set() for _ in self.components]
        for v, nbrs in enumerate(self.succ):
            for w in nbrs:
                a, b = self.comp_of[v], self.comp_of[w]
                if a != b:
                    self.dag[a].add(b)

    def is_trivial(self, c: int) -> bool:
        comp = self.components[c]
        return len(comp) == 1 and comp[0] not in self.succ[comp[0]]

    def period(self, c: int) -> int:
        """Period of component ``c``; 0 for a trivial component."""
        if self.is_trivial(c):
            return 0
        comp = set(self.components[c])
        root = self.components[c][0]
        level = {root: 0}
        queue = deque([root])
        g = 0
        while queue:
            v = queue.popleft()
            for w in self.succ[v]:
                if w not in comp:
                    continue
                if w not in level:
                    level[w] = level[v] + 1
                    queue.append(w)
                else:
                    g = gcd(g, level[v] + 1 - level[w])
        return g

    def is_sink(self, c: int) -> bool:
        return not self.dag[c]

    def topological_order(self) -> list[int]:
        """Sources first; ties broken by the smallest vertex of each component."""
        import heapq

        indeg = [0] * len(self.components)
        for c in range(len(self.components)):
            for d in self.dag[c]:
                indeg[d] += 1
        heap = [(self.components[c][0], c) for c in range(len(self.components)) if indeg[c] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, c = heapq.heappop(heap)
            order.append(c)
            for d in self.dag[c]:
                indeg[d] -= 1
                if indeg[d] == 0:
                    heapq.heappush(heap, (self.components[d][0], d))
        return order


def boolean_power(B: np.ndarray, k: int) -> np.ndarray:
    """``B**k`` over the boolean semiring."""
    n = B.shape[0]
    result = np.eye(n, dtype=bool)
    base = B.astype(bool)
    while k:
        if k & 1:
            result = (result.astype(np.int64) @ base.astype(np.int64)) > 0
        base = (base.astype(np.int64) @ base.astype(np.int64)) > 0
        k >>= 1
    return result


def primitivity_exponent(M: np.ndarray) -> int | None:
    """Least ``k`` with ``M**k > 0`` entrywise, searched up to Wielandt's bound."""
    n = M.shape[0]
    B = np.asarray(M > 0, dtype=bool)
    P = B.copy()
    for k in range(1, (n - 1) ** 2 + 2):
        if P.all():
            return k
        P = (P.astype(np.int64) @ B.astype(np.int64)) > 0
    return None

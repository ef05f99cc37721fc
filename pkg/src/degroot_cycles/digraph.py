"""Communication digraphs of influence matrices.

Arcs point in the direction of influence: ``p[i, j] > 0`` gives the arc
``j -> i`` with weight ``p[i, j]``.  Vertices are ``0 .. n-1``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple

import numpy as np

from .errors import InconsistentLoop, InfeasibleRow, ValidationError
from .matrix_core import StochasticMatrix

INCOMING_TOL = 1e-12
LOOP_TOL = 1e-9


class Arc(NamedTuple):
    tail: int
    head: int
    weight: float


@dataclass(frozen=True)
class WeightedDigraph:
    n: int
    arcs: tuple[Arc, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("a digraph needs at least one vertex")
        arcs = tuple(sorted(Arc(int(t), int(h), float(w)) for t, h, w in self.arcs))
        index = {}
        for a in arcs:
            if not (0 <= a.tail < self.n and 0 <= a.head < self.n):
                raise ValidationError(f"arc {a} has an endpoint outside 0..{self.n - 1}")
            if not a.weight > 0 or not np.isfinite(a.weight):
                raise ValidationError(f"arc {a} must have a finite positive weight")
            if (a.tail, a.head) in index:
                raise ValidationError(f"parallel arcs {a.tail} -> {a.head}")
            index[(a.tail, a.head)] = a.weight
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_index", index)

    def weight(self, tail: int, head: int) -> float:
        return self._index.get((tail, head), 0.0)

    def in_arcs(self, v: int) -> list[Arc]:
        """Non-loop arcs entering ``v``."""
        return [a for a in self.arcs if a.head == v and a.tail != v]

    def loops(self) -> dict[int, float]:
        return {a.tail: a.weight for a in self.arcs if a.tail == a.head}

    def non_loop_arcs(self) -> list[Arc]:
        return [a for a in self.arcs if a.tail != a.head]


@dataclass(frozen=True)
class AnalysisReport:
    """Structure of a communication digraph.

    ``periods[c]`` is the period of component ``c``; 0 marks a component
    without any cycle (a loopless singleton), whose powers never settle.
    """

    components: list[list[int]]
    basic_flags: list[bool]
    nu: int
    b: int
    periods: list[int]
    has_spanning_out_tree: bool
    regular: bool
    limit_exists: bool

    @property
    def basic_components(self) -> list[list[int]]:
        return [c for c, f in zip(self.components, self.basic_flags) if f]

    @property
    def basic_periods(self) -> list[int]:
        return [p for p, f in zip(self.periods, self.basic_flags) if f]


def digraph_from_matrix(P: StochasticMatrix, zero_tol: float = 0.0) -> WeightedDigraph:
    m = P.entries
    arcs = [
        (j, i, m[i, j])
        for i in range(P.n)
        for j in range(P.n)
        if m[i, j] > zero_tol
    ]
    return WeightedDigraph(P.n, tuple(arcs))


def matrix_from_digraph(G: WeightedDigraph) -> StochasticMatrix:
    """Influence matrix ``I - L`` of ``G``.

    Missing loops are completed to make each row sum to 1; an explicit
    loop must already agree with that completion and is then used as is.
    """
    m = np.zeros((G.n, G.n))
    for a in G.non_loop_arcs():
        m[a.head, a.tail] = a.weight
    loops = G.loops()
    for i in range(G.n):
        incoming = m[i].sum()
        if incoming > 1.0 + INCOMING_TOL:
            raise InfeasibleRow(i, float(incoming))
        completion = 1.0 - incoming
        if completion <= INCOMING_TOL:
            completion = 0.0
        if i in loops:
            if abs(loops[i] - completion) > LOOP_TOL:
                raise InconsistentLoop(i, loops[i], completion)
            m[i, i] = loops[i]
        else:
            m[i, i] = completion
    return StochasticMatrix(m)


def kirchhoff(G: WeightedDigraph) -> np.ndarray:
    """Kirchhoff matrix: ``L[i, j] = -w(j -> i)`` off the diagonal, ``L[i, i]`` = weight entering ``i``.

    Loops are ignored.
    """
    L = np.zeros((G.n, G.n))
    for a in G.non_loop_arcs():
        L[a.head, a.tail] -= a.weight
        L[a.head, a.head] += a.weight
    return L


def _adjacency(G: WeightedDigraph) -> list[list[int]]:
    adj = [[] for _ in range(G.n)]
    for a in G.non_loop_arcs():
        adj[a.tail].append(a.head)
    return adj


def strong_components(G: WeightedDigraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Components are returned sorted internally and ordered by smallest vertex.
    """
    adj = _adjacency(G)
    index = [-1] * G.n
    low = [0] * G.n
    on_stack = [False] * G.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(G.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while i < len(adj[v]):
                w = adj[v][i]
                i += 1
                if index[w] == -1:
                    work.append((v, i))
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
    return sorted(comps, key=lambda c: c[0])


def component_period(G: WeightedDigraph, component: list[int]) -> int:
    """gcd of cycle lengths inside ``component``; 0 if it has no cycle."""
    adj = [[] for _ in range(G.n)]
    for a in G.arcs:
        adj[a.tail].append(a.head)
    return _period(adj, component)


def _period(adj: list[list[int]], component: list[int]) -> int:
    # BFS levels from any member; every internal arc (u, v) closes a walk
    # whose length is congruent to level(u) + 1 - level(v) modulo the period
    members = set(component)
    level = {component[0]: 0}
    queue = deque([component[0]])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in members and v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    g = 0
    for u in component:
        for v in adj[u]:
            if v in members:
                g = gcd(g, abs(level[u] + 1 - level[v]))
    return g


def _reaches_all(adj: list[list[int]], start: int) -> bool:
    seen = {start}
    queue = deque([start])
    while queue:
        for w in adj[queue.popleft()]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(adj)


def analyze(G: WeightedDigraph) -> AnalysisReport:
    comps = strong_components(G)
    owner = [0] * G.n
    for c, members in enumerate(comps):
        for v in members:
            owner[v] = c
    basic = [True] * len(comps)
    for a in G.non_loop_arcs():
        if owner[a.tail] != owner[a.head]:
            basic[owner[a.head]] = False
    full_adj = [[] for _ in range(G.n)]
    for a in G.arcs:
        full_adj[a.tail].append(a.head)
    periods = [_period(full_adj, c) for c in comps]
    nu = sum(basic)
    b = sum(len(c) for c, f in zip(comps, basic) if f)
    adj = _adjacency(G)
    spanning = any(_reaches_all(adj, c[0]) for c, f in zip(comps, basic) if f)
    limit_exists = all(p == 1 for p, f in zip(periods, basic) if f)
    regular = nu == 1 and limit_exists
    return AnalysisReport(
        components=comps,
        basic_flags=basic,
        nu=nu,
        b=b,
        periods=periods,
        has_spanning_out_tree=spanning,
        regular=regular,
        limit_exists=limit_exists,
    )

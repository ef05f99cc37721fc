"""Spanning out-trees and maximum out-forests.

Two independent routes to the per-root tree weights ``t_j``: exhaustive
enumeration (:func:`enumerate_out_trees`, small n only) and principal
minors of the Kirchhoff matrix (:func:`tree_weights_via_minors`).
Loops never belong to trees or forests.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .digraph import WeightedDigraph, kirchhoff
from .errors import NoSpanningTree, TooLarge

ENUMERATION_BOUND = 8
COMBINATION_GUARD = 10**7


@dataclass(frozen=True)
class ForestWeights:
    per_root: np.ndarray
    total: float

    @property
    def normalized(self) -> np.ndarray:
        """``t_j / t``; raises :class:`NoSpanningTree` when ``t = 0``."""
        if not self.total > 0:
            raise NoSpanningTree("digraph has no spanning out-tree")
        return self.per_root / self.total


@dataclass(frozen=True)
class ForestMatrix:
    entries: np.ndarray
    forest_dimension: int


def _in_options(G: WeightedDigraph) -> list[list[tuple[int, float]]]:
    return [[(a.tail, a.weight) for a in G.in_arcs(v)] for v in range(G.n)]


def _guard(G: WeightedDigraph, options, bound: int, extra: int) -> None:
    if G.n > bound:
        raise TooLarge(f"n = {G.n} exceeds the enumeration bound {bound}")
    count = prod(len(o) + extra for o in options)
    if count > COMBINATION_GUARD:
        raise TooLarge(f"{count} parent combinations exceed {COMBINATION_GUARD}")


def _creates_cycle(parent: list, v: int, p: int) -> bool:
    # walk up from the proposed parent; unassigned vertices end the chain
    while p is not None and p >= 0:
        if p == v:
            return True
        p = parent[p]
    return False


def enumerate_out_trees(G: WeightedDigraph, root: int, bound: int = ENUMERATION_BOUND) -> float:
    """Total weight of spanning out-trees rooted at ``root``, by exhaustive search.

    Each non-root vertex picks one incoming arc; choices that close a cycle
    are discarded.  With ``n - 1`` acyclic parent pointers every vertex
    leads back to ``root``, so each surviving choice is a spanning tree.
    """
    options = _in_options(G)
    _guard(G, options, bound, 0)
    order = [v for v in range(G.n) if v != root]
    # None = unassigned, -1 = root
    parent: list = [None] * G.n
    parent[root] = -1

    def search(k: int, weight: float) -> float:
        if k == len(order):
            return weight
        v = order[k]
        total = 0.0
        for tail, w in options[v]:
            if _creates_cycle(parent, v, tail):
                continue
            parent[v] = tail
            total += search(k + 1, weight * w)
            parent[v] = None
        return total

    return search(0, 1.0)


def tree_weight_vector(G: WeightedDigraph, bound: int = ENUMERATION_BOUND) -> ForestWeights:
    per_root = np.array([enumerate_out_trees(G, j, bound) for j in range(G.n)])
    return ForestWeights(per_root, float(per_root.sum()))


def tree_weights_via_minors(G: WeightedDigraph) -> ForestWeights:
    """Matrix-tree theorem: ``t_j`` is the principal minor of the Kirchhoff matrix without row and column ``j``."""
    L = kirchhoff(G)
    per_root = np.empty(G.n)
    for j in range(G.n):
        keep = [k for k in range(G.n) if k != j]
        per_root[j] = np.linalg.det(L[np.ix_(keep, keep)]) if keep else 1.0
    # tree weights are nonnegative; tiny negative determinants are round-off
    per_root = np.where(per_root < 0, 0.0, per_root)
    return ForestWeights(per_root, float(per_root.sum()))


def max_out_forest_matrix(G: WeightedDigraph, bound: int = ENUMERATION_BOUND) -> ForestMatrix:
    """Normalized matrix of maximum out-forests, by exhaustive search.

    Every vertex is either a root or takes one incoming arc; among acyclic
    choices only those with the most arcs are kept.  Entry ``(i, j)`` is the
    weight share of maximum forests in which ``i`` hangs below root ``j``.
    """
    n = G.n
    options = _in_options(G)
    _guard(G, options, bound, 1)
    parent: list = [None] * n
    acc = np.zeros((n, n))
    best = [-1, 0.0]  # arc count, total weight

    def root_of(v: int) -> int:
        while parent[v] != -1:
            v = parent[v]
        return v

    def search(v: int, arcs: int, weight: float) -> None:
        if arcs + (n - v) < best[0]:
            return
        if v == n:
            if arcs > best[0]:
                best[0], best[1] = arcs, 0.0
                acc[:] = 0.0
            best[1] += weight
            for i in range(n):
                acc[i, root_of(i)] += weight
            return
        for tail, w in options[v]:
            if _creates_cycle(parent, v, tail):
                continue
            parent[v] = tail
            search(v + 1, arcs + 1, weight * w)
            parent[v] = None
        parent[v] = -1
        search(v + 1, arcs, weight)
        parent[v] = None

    search(0, 0, 1.0)
    return ForestMatrix(acc / best[1], best[0])

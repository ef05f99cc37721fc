"""Hamiltonian cycles with loops that reproduce a given final weight distribution.

For a cycle visiting ``v_1 -> v_2 -> ... -> v_n -> v_1``, the only spanning
out-tree rooted at ``k`` drops the arc entering ``k``, so its weight is the
product of all entering weights divided by ``x_k``.  Inverting that gives
the unique cycle for prescribed tree weights, and scaling it gives a
stochastic family for any positive probability vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .digraph import WeightedDigraph
from .errors import (
    BetaOutOfRange,
    DegenerateN,
    DimensionMismatch,
    NonPositivePi,
    NonPositiveTarget,
    ValidationError,
    WeightAboveOne,
)
from .matrix_core import (
    LIMIT_TOL,
    StochasticMatrix,
    as_probability_vector,
    limit_powers,
)

WEIGHT_TOL = 1e-12

EQUIVALENT = "equivalent"
NOT_EQUIVALENT = "not-equivalent"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CycleSpec:
    """Cycle ``order[0] -> order[1] -> ... -> order[-1] -> order[0]`` plus loops.

    ``entering_weight[k]`` is the weight of the cycle arc entering vertex
    ``k`` (indexed by vertex, not by position in ``order``).
    """

    n: int
    order: tuple[int, ...]
    entering_weight: np.ndarray
    loop_weight: np.ndarray
    beta: float | None = None

    def arcs(self) -> list[tuple[int, int, float]]:
        """Cycle arcs as ``(tail, head, weight)`` in visiting order."""
        if self.n == 1:
            return []
        return [
            (self.order[i - 1], v, float(self.entering_weight[v]))
            for i, v in enumerate(self.order)
        ]

    def digraph(self, loops: bool = True) -> WeightedDigraph:
        arcs = self.arcs()
        if loops:
            arcs += [(v, v, float(w)) for v, w in enumerate(self.loop_weight) if w > 0]
        return WeightedDigraph(self.n, tuple(arcs))


def default_order(n: int) -> tuple[int, ...]:
    """``n-1 -> n-2 -> ... -> 0 -> n-1``, the labelling used in the worked example."""
    return tuple(range(n - 1, -1, -1))


def _check_order(order: Sequence[int] | None, n: int) -> tuple[int, ...]:
    if order is None:
        return default_order(n)
    order = tuple(int(v) for v in order)
    if sorted(order) != list(range(n)):
        raise ValidationError(f"order {order} is not a permutation of 0..{n - 1}")
    return order


def cycle_from_tree_weights(q, order: Sequence[int] | None = None) -> CycleSpec:
    """The unique cycle whose per-root out-tree weights equal ``q``.

    ``x_k = (prod q)^(1/(n-1)) / q_k``, evaluated in log space.  The weights
    do not depend on ``order``.  Loops are left at zero since ``x`` need not
    be bounded by 1.
    """
    q = np.asarray(q, dtype=float)
    n = q.shape[0]
    if n < 2:
        raise DegenerateN("tree-weight synthesis needs at least 2 vertices")
    for k, value in enumerate(q):
        if not value > 0 or not np.isfinite(value):
            raise NonPositiveTarget(k, float(value))
    logq = np.log(q)
    x = np.exp(logq.sum() / (n - 1) - logq)
    return CycleSpec(n, _check_order(order, n), x, np.zeros(n))


def cycle_from_pi(
    pi, beta: float | None = None, order: Sequence[int] | None = None
) -> CycleSpec:
    """Stochastic cycle with loops whose final weight distribution is ``pi``.

    The arc entering ``k`` has weight ``beta / pi[k]``; admissible values are
    ``0 < beta <= min(pi)`` and the default is the upper end, which leaves
    the least-influential agent without a loop.
    """
    pi = as_probability_vector(pi)
    n = pi.shape[0]
    for k, value in enumerate(pi):
        if not value > 0:
            raise NonPositivePi(k, float(value))
    upper = float(pi.min())
    if beta is None:
        beta = upper
    beta = float(beta)
    if not beta > 0 or beta > upper * (1 + WEIGHT_TOL):
        raise BetaOutOfRange(beta, upper)
    order = _check_order(order, n)
    if n == 1:
        return CycleSpec(1, order, np.zeros(1), np.ones(1), beta)
    x = beta / pi
    x = np.where(x > 1.0 - WEIGHT_TOL, 1.0, x)
    return CycleSpec(n, order, x, 1.0 - x, beta)


def cycle_to_matrix(spec: CycleSpec) -> StochasticMatrix:
    """Influence matrix of a stochastic cycle: row ``v`` puts ``x_v`` on its cycle predecessor."""
    n = spec.n
    m = np.zeros((n, n))
    if n == 1:
        m[0, 0] = 1.0
        return StochasticMatrix(m)
    for tail, head, w in spec.arcs():
        if w > 1 + WEIGHT_TOL:
            raise WeightAboveOne(head, w)
        w = min(w, 1.0)
        m[head, tail] = w
        m[head, head] = 1.0 - w
    return StochasticMatrix(m)


@dataclass(frozen=True)
class EquivalenceReport:
    limit_exists: tuple[bool, bool]
    rank_one: tuple[bool, bool]
    stationary_rows: tuple[np.ndarray | None, np.ndarray | None]
    max_difference: float | None
    rows_match: bool
    verdict: str

    @property
    def equivalent(self) -> bool:
        return self.verdict == EQUIVALENT


def _rows_equal(Q: np.ndarray, tol: float) -> bool:
    return bool(np.abs(Q - Q[0]).max() <= tol)


def verify_equivalence(
    Pa: StochasticMatrix,
    Pb: StochasticMatrix,
    tol: float = 1e-8,
    limit_tol: float = LIMIT_TOL,
) -> EquivalenceReport:
    """Do two pooling procedures reach the same consensus for every start?

    Both power limits must exist and have identical rows, and those rows
    must agree within ``tol``.  A missing limit gives ``indeterminate``.
    """
    if Pa.n != Pb.n:
        raise DimensionMismatch(Pa.n, Pb.n)
    la, lb = limit_powers(Pa, limit_tol), limit_powers(Pb, limit_tol)
    exists = (la.converged, lb.converged)
    if not all(exists):
        return EquivalenceReport(exists, (False, False), (None, None), None, False, INDETERMINATE)
    Qa, Qb = la.limit_candidate, lb.limit_candidate
    rank_one = (_rows_equal(Qa, tol), _rows_equal(Qb, tol))
    rows = (Qa[0].copy(), Qb[0].copy())
    diff = float(np.abs(rows[0] - rows[1]).max())
    match = all(rank_one) and diff <= tol
    verdict = EQUIVALENT if match else NOT_EQUIVALENT
    return EquivalenceReport(exists, rank_one, rows, diff, match, verdict)

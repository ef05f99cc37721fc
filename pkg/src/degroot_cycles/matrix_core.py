"""Dense stochastic-matrix primitives.

Everything here works on small dense ``numpy`` arrays (desk scale, n up to a
few dozen).  Validated matrices are wrapped in :class:`StochasticMatrix`,
whose entries are stored read-only so values can be shared freely.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeEntry,
    NonFiniteEntry,
    NotProbabilityVector,
    NotSquare,
    NotUnique,
    RowSumOutOfTolerance,
    SingularSystem,
    ValidationError,
)

ROW_TOL = 1e-9
LIMIT_TOL = 1e-12
MAX_DOUBLINGS = 60
PIVOT_TOL = 1e-10

CONVERGED = "converged"
NOT_CONVERGED = "not_converged"


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def as_square(raw) -> np.ndarray:
    """Return ``raw`` as a finite square float array or raise."""
    m = np.asarray(raw, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise NotSquare(m.shape)
    bad = np.argwhere(~np.isfinite(m))
    if bad.size:
        raise NonFiniteEntry(int(bad[0, 0]), int(bad[0, 1]))
    return m


def _check_stochastic(m: np.ndarray, row_tol: float) -> np.ndarray:
    neg = np.argwhere(m < 0)
    if neg.size:
        i, j = int(neg[0, 0]), int(neg[0, 1])
        raise NegativeEntry(i, j, float(m[i, j]))
    sums = m.sum(axis=1)
    for i, s in enumerate(sums):
        if abs(s - 1.0) > row_tol:
            raise RowSumOutOfTolerance(i, float(s), row_tol)
    return sums


@dataclass(frozen=True)
class StochasticMatrix:
    """Row-stochastic influence matrix; ``entries[i, j]`` is agent j's weight in agent i's update.

    Direct construction checks nonnegativity and row sums but does not
    renormalize; use :func:`validate_stochastic` for raw input.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = as_square(self.entries)
        _check_stochastic(m, ROW_TOL)
        object.__setattr__(self, "entries", _frozen(m))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)


@dataclass(frozen=True)
class LimitResult:
    status: str
    limit_candidate: np.ndarray
    residual: float
    doublings_used: int

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED


def _exact_unit_sum(row: np.ndarray) -> None:
    """Nudge large entries by single ulps until the float row sum is exactly 1.

    Best effort: summation rounding occasionally makes 1.0 unreachable, and
    the row is then left within a couple of ulps.
    """
    original = row.copy()
    for k in np.argsort(row)[::-1][:4]:
        for _ in range(8):
            residual = 1.0 - row.sum()
            if residual == 0.0:
                return
            row[k] = np.nextafter(row[k], np.inf if residual > 0 else -np.inf)
        row[:] = original


def validate_stochastic(raw, row_tol: float = ROW_TOL) -> StochasticMatrix:
    """Check that ``raw`` is row-stochastic and renormalize every row to sum 1."""
    m = as_square(raw)
    sums = _check_stochastic(m, row_tol)
    m = m / sums[:, None]
    for row in m:
        _exact_unit_sum(row)
    return StochasticMatrix(m)


def _vector(values, n: int | None = None) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch("a 1-d vector", f"shape {v.shape}")
    if n is not None and v.shape[0] != n:
        raise DimensionMismatch(n, v.shape[0])
    if not np.all(np.isfinite(v)):
        raise NotProbabilityVector("vector has non-finite entries")
    return v


def as_probability_vector(values, tol: float = ROW_TOL) -> np.ndarray:
    """Validate a probability vector (nonnegative, sums to 1 within ``tol``)."""
    v = _vector(values)
    if v.size == 0:
        raise NotProbabilityVector("empty probability vector")
    if np.any(v < 0):
        raise NotProbabilityVector(f"negative entry in {v.tolist()}")
    if abs(v.sum() - 1.0) > tol:
        raise NotProbabilityVector(f"entries sum to {v.sum()!r}, not 1")
    return v


def iterate_opinions(P: StochasticMatrix, s0, steps: int) -> list[np.ndarray]:
    """Run ``steps`` rounds of ``s(k) = P s(k-1)``; returns ``[s(0), ..., s(steps)]``."""
    s = _vector(s0, P.n).copy()
    if steps < 0:
        raise ValidationError("steps must be nonnegative")
    out = [s]
    for _ in range(steps):
        s = P.entries @ s
        out.append(s)
    return out


def _inf_norm(m: np.ndarray) -> float:
    if m.size == 0:
        return 0.0
    return float(np.abs(m).sum(axis=1).max())


def limit_powers(
    P: StochasticMatrix, tol: float = LIMIT_TOL, max_doublings: int = MAX_DOUBLINGS
) -> LimitResult:
    """Approximate ``lim P^k`` by repeated squaring.

    Squaring stops once two successive powers agree within ``tol`` (infinity
    norm).  Because ``P^(2^m)`` can settle even when ``P^k`` oscillates (any
    period dividing a power of two), the candidate ``Q`` is accepted only if
    ``||QP - Q|| <= tol`` as well.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    P_ = P.entries
    Q = P_.copy()
    used = 0
    for used in range(1, max_doublings + 1):
        Q2 = Q @ Q
        # powers stay stochastic; without this, row-sum round-off compounds as (1 - eps)^(2^m)
        Q2 /= Q2.sum(axis=1, keepdims=True)
        step = _inf_norm(Q2 - Q)
        Q = Q2
        if step <= tol:
            break
    residual = _inf_norm(Q @ P_ - Q)
    status = CONVERGED if residual <= tol else NOT_CONVERGED
    return LimitResult(status, _frozen(Q), residual, used)


def _eliminate(M: np.ndarray, pivot_tol: float) -> int:
    """Gaussian elimination with full pivoting; returns the number of pivots above ``pivot_tol``."""
    A = np.array(M, dtype=float)
    rows, cols = A.shape
    r = 0
    for c in range(min(rows, cols)):
        sub = np.abs(A[r:, c:])
        if sub.size == 0:
            break
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= pivot_tol:
            break
        i += r
        j += c
        A[[r, i]] = A[[i, r]]
        A[:, [c, j]] = A[:, [j, c]]
        A[r + 1 :, c:] -= np.outer(A[r + 1 :, c] / A[r, c], A[r, c:])
        r += 1
    return r


def matrix_rank(M, pivot_tol: float = PIVOT_TOL) -> int:
    """Numerical rank; pivots with magnitude ``<= pivot_tol`` count as zero."""
    if pivot_tol <= 0:
        raise ValueError("pivot_tol must be positive")
    A = np.asarray(M, dtype=float)
    if A.size == 0:
        return 0
    return _eliminate(A, pivot_tol)


def stationary_vector(P: StochasticMatrix, pivot_tol: float = PIVOT_TOL) -> np.ndarray:
    """Unique probability vector pi with ``pi P = pi``.

    Solves ``(P^T - I) pi = 0`` with the last equation replaced by
    ``sum(pi) = 1``.  Works for periodic chains too; requires a single
    basic bicomponent.
    """
    from .digraph import analyze, digraph_from_matrix

    report = analyze(digraph_from_matrix(P))
    if report.nu != 1:
        raise NotUnique(report.nu)
    n = P.n
    A = P.entries.T - np.eye(n)
    A[-1, :] = 1.0
    if matrix_rank(A, pivot_tol) < n:
        raise SingularSystem("normalized stationary system is singular")
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    pi = np.linalg.solve(A, rhs)
    # agents outside the basic bicomponent carry no weight; round-off would leave ~1e-17 there
    basic = np.zeros(n, dtype=bool)
    basic[report.basic_components[0]] = True
    pi = np.where(basic & (pi > 0), pi, 0.0)
    return pi / pi.sum()


def consensus_value(pi, s0) -> float:
    """Final common opinion ``pi . s0``."""
    p = _vector(pi)
    return float(p @ _vector(s0, p.shape[0]))


"""Exception hierarchy.

Index attributes (``row``, ``col``, ``vertex``) are 0-based; messages use
1-based agent labels because that is what users see in files and reports.
"""


class DeGrootError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DeGrootError, ValueError):
    """Input violates a documented precondition."""


class NotSquare(ValidationError):
    def __init__(self, shape):
        self.shape = tuple(shape)
        super().__init__(f"matrix is not square: shape {self.shape}")


class NonFiniteEntry(ValidationError):
    def __init__(self, row, col):
        self.row, self.col = row, col
        super().__init__(f"non-finite entry at ({row + 1}, {col + 1})")


class NegativeEntry(ValidationError):
    def __init__(self, row, col, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"negative entry {value!r} at ({row + 1}, {col + 1})")


class RowSumOutOfTolerance(ValidationError):
    def __init__(self, row, total, tol):
        self.row, self.total, self.tol = row, total, tol
        super().__init__(
            f"row {row + 1} sums to {total!r} (|sum - 1| > {tol:g})"
        )


class DimensionMismatch(ValidationError):
    def __init__(self, expected, got):
        self.expected, self.got = expected, got
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")


class NotProbabilityVector(ValidationError):
    pass


class NotUnique(ValidationError):
    def __init__(self, nu):
        self.nu = nu
        super().__init__(
            f"stationary vector is not unique: {nu} basic bicomponents"
        )


class SingularSystem(ValidationError):
    pass


class InfeasibleRow(ValidationError):
    def __init__(self, vertex, incoming):
        self.vertex, self.incoming = vertex, incoming
        super().__init__(
            f"vertex {vertex + 1}: incoming arc weight {incoming!r} exceeds 1"
        )


class InconsistentLoop(ValidationError):
    def __init__(self, vertex, loop, expected):
        self.vertex, self.loop, self.expected = vertex, loop, expected
        super().__init__(
            f"vertex {vertex + 1}: loop weight {loop!r} but row completion "
            f"requires {expected!r}"
        )


class TooLarge(ValidationError):
    pass


class NoSpanningTree(ValidationError):
    pass


class NonPositiveTarget(ValidationError):
    def __init__(self, index, value):
        self.index, self.value = index, value
        super().__init__(f"target weight {index + 1} is not positive: {value!r}")


class DegenerateN(ValidationError):
    pass


class NonPositivePi(ValidationError):
    def __init__(self, index, value):
        self.index, self.value = index, value
        super().__init__(f"pi[{index + 1}] is not positive: {value!r}")


class BetaOutOfRange(ValidationError):
    def __init__(self, beta, upper):
        self.beta, self.upper = beta, upper
        super().__init__(f"beta must satisfy 0 < beta <= {upper!r}, got {beta!r}")


class WeightAboveOne(ValidationError):
    def __init__(self, vertex, weight):
        self.vertex, self.weight = vertex, weight
        super().__init__(
            f"arc entering vertex {vertex + 1} has weight {weight!r} > 1"
        )

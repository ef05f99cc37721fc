"""DeGroot opinion pooling: convergence analysis, limiting weights, and
synthesis of equivalent Hamiltonian cycles with loops."""

__version__ = "0.1.0"

from .cycle import (
    CycleSpec,
    EquivalenceReport,
    cycle_from_pi,
    cycle_from_tree_weights,
    cycle_to_matrix,
    default_order,
    verify_equivalence,
)
from .digraph import (
    AnalysisReport,
    WeightedDigraph,
    analyze,
    digraph_from_matrix,
    kirchhoff,
    matrix_from_digraph,
    strong_components,
)
from .forests import (
    ForestMatrix,
    ForestWeights,
    enumerate_out_trees,
    max_out_forest_matrix,
    tree_weight_vector,
    tree_weights_via_minors,
)
from .matrix_core import (
    LimitResult,
    StochasticMatrix,
    consensus_value,
    iterate_opinions,
    limit_powers,
    matrix_rank,
    stationary_vector,
    validate_stochastic,
)

__all__ = [
    "AnalysisReport",
    "CycleSpec",
    "EquivalenceReport",
    "ForestMatrix",
    "ForestWeights",
    "LimitResult",
    "StochasticMatrix",
    "WeightedDigraph",
    "analyze",
    "consensus_value",
    "cycle_from_pi",
    "cycle_from_tree_weights",
    "cycle_to_matrix",
    "default_order",
    "digraph_from_matrix",
    "enumerate_out_trees",
    "iterate_opinions",
    "kirchhoff",
    "limit_powers",
    "matrix_from_digraph",
    "matrix_rank",
    "max_out_forest_matrix",
    "stationary_vector",
    "strong_components",
    "tree_weight_vector",
    "tree_weights_via_minors",
    "validate_stochastic",
    "verify_equivalence",
]

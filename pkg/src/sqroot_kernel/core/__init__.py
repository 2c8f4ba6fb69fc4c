"""Core algorithms: graphs, Edge Reduction, kernelization and exact solvers."""

from .decomposition import (
    DecompositionError,
    TreeDecomposition,
    greedy_decomposition,
    h_tree_decomposition,
    treewidth_at_most,
    validate_decomposition,
)
from .density import MAD_THRESHOLD, max_average_degree
from .graph import Graph, GraphError, square
from .instance import InstanceFormatError, InstanceLoader, InstanceSourceError
from .kernel import KernelOutcome, component_reduce, hkt_planar_square_check, kernelize
from .oracle import SearchLimits, enumerate_roots, solve_labeled
from .recognizer import UVPartition, find_recognizable_edge, uv_partition
from .reduction import (
    LabeledInstance,
    LabelError,
    ReductionError,
    ReductionTrace,
    edge_reduce,
    restore_solution,
    verify_solution,
)
from .twsolver import TwSolution, mad_solve, solve_labeled_tw, solve_tw
from .verdict import Verdict

__all__ = [
    "DecompositionError",
    "Graph",
    "GraphError",
    "InstanceFormatError",
    "InstanceLoader",
    "InstanceSourceError",
    "KernelOutcome",
    "LabelError",
    "LabeledInstance",
    "MAD_THRESHOLD",
    "ReductionError",
    "ReductionTrace",
    "SearchLimits",
    "TreeDecomposition",
    "TwSolution",
    "UVPartition",
    "Verdict",
    "component_reduce",
    "edge_reduce",
    "enumerate_roots",
    "find_recognizable_edge",
    "greedy_decomposition",
    "h_tree_decomposition",
    "hkt_planar_square_check",
    "kernelize",
    "mad_solve",
    "max_average_degree",
    "restore_solution",
    "solve_labeled",
    "solve_labeled_tw",
    "solve_tw",
    "square",
    "treewidth_at_most",
    "uv_partition",
    "validate_decomposition",
    "verify_solution",
]

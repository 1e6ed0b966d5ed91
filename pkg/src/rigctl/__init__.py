"""d-sparse subgraph structure and randomized generic rigidity ranks."""

from __future__ import annotations

from .errors import CapabilityError, GraphInputError, InconsistencyError, PropertyViolation, RigctlError
from .graph import Graph, complete_graph, example_double_k5, example_k5_flower, parse_graph, serialize_graph
from .kernels import BACKEND
from .rigidity import generic_rank, is_independent
from .sparsity import SparsityParams, critical_components, is_d_sparse, maximal_sparse_subgraph

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapabilityError",
    "Graph",
    "GraphInputError",
    "InconsistencyError",
    "PropertyViolation",
    "RigctlError",
    "SparsityParams",
    "complete_graph",
    "critical_components",
    "example_double_k5",
    "example_k5_flower",
    "generic_rank",
    "is_d_sparse",
    "is_independent",
    "maximal_sparse_subgraph",
    "parse_graph",
    "serialize_graph",
]

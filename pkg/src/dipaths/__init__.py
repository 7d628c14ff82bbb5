"""Exact digraph combinatorics: dicolorings, good path partitions, orthogonal
witnesses and k-norm parameters, with independent certificate checking."""

from dipaths.digraph import (
    Digraph,
    ParseError,
    is_acyclic,
    longest_path_dag,
    parse_edge_list,
    to_dot,
    to_edge_list,
    underlying_graph,
)
from dipaths.solvers import (
    BudgetExceeded,
    SolverLimit,
    longest_path,
    max_induced_acyclic,
    max_stable_set,
    min_coloring,
    min_dicoloring,
    min_path_partition,
)

__all__ = [
    "BudgetExceeded",
    "Digraph",
    "ParseError",
    "SolverLimit",
    "is_acyclic",
    "longest_path",
    "longest_path_dag",
    "max_induced_acyclic",
    "max_stable_set",
    "min_coloring",
    "min_dicoloring",
    "min_path_partition",
    "parse_edge_list",
    "to_dot",
    "to_edge_list",
    "underlying_graph",
]

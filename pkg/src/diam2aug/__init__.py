"""Dominating-set / diameter-2 augmentation reduction toolkit."""

from .gadget import (
    CLOSED_NEIGHBORHOOD,
    TWIN_ONLY,
    GadgetGraph,
    build_gadget,
    classify_vertex,
    forward_map,
    pair_index,
)
from .graph import (
    Graph,
    bfs_distances,
    diameter,
    diameter_with_augmentation,
    from_edge_list,
    is_dominating,
    parse_graph,
    random_connected_graph,
    serialize_graph,
)
from .solvers import (
    SolveResult,
    solve_diameter_augmentation,
    solve_diameter_improvement,
    solve_dominating_set,
    uncovered_pairs,
)
from .swaprules import (
    SwapStep,
    SwapTrace,
    UPartition,
    apply_rule,
    extract_dominating_set,
    normalize,
    partition_u,
)

__all__ = [
    "CLOSED_NEIGHBORHOOD",
    "TWIN_ONLY",
    "GadgetGraph",
    "Graph",
    "SolveResult",
    "SwapStep",
    "SwapTrace",
    "UPartition",
    "apply_rule",
    "bfs_distances",
    "build_gadget",
    "classify_vertex",
    "diameter",
    "diameter_with_augmentation",
    "extract_dominating_set",
    "forward_map",
    "from_edge_list",
    "is_dominating",
    "normalize",
    "pair_index",
    "parse_graph",
    "partition_u",
    "random_connected_graph",
    "serialize_graph",
    "solve_diameter_augmentation",
    "solve_diameter_improvement",
    "solve_dominating_set",
    "uncovered_pairs",
]

__version__ = "0.1.0"

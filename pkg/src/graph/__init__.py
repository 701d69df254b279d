"""Graph core: digraphs, traversal, matching, patterns and the brute-force oracle."""

from .digraph import (
    Digraph,
    antidirected_path,
    directed_cycle,
    directed_path,
    disjoint_union,
    from_arc_list,
    out_star,
    subdivide,
    transitive_tournament,
)
from .matching import max_matching
from .oracle import find_subdigraph_map, oracle_find_pattern
from .pattern import (
    Embedding,
    PatternPath,
    Star,
    StarsPathsPattern,
    pattern_to_digraph,
    validate_embedding,
)
from .traversal import (
    ancestors,
    descendants,
    is_dag,
    reachable,
    strong_components,
    topological_order,
    weak_components,
)

__all__ = [
    "Digraph", "from_arc_list", "subdivide", "directed_path", "directed_cycle",
    "antidirected_path", "transitive_tournament", "out_star", "disjoint_union",
    "max_matching", "find_subdigraph_map", "oracle_find_pattern",
    "Embedding", "PatternPath", "Star", "StarsPathsPattern", "pattern_to_digraph",
    "validate_embedding", "ancestors", "descendants", "is_dag", "reachable",
    "strong_components", "topological_order", "weak_components",
]

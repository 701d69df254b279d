"""Hardness constructions, their source-problem brute forces and random instance families."""

from .antidirected import gen_antidirected, has_antidirected_path, has_pair_avoiding_path
from .base import ReductionOutput
from .clique import gen_clique_to_expansion, has_clique
from .consistent_matching import (
    BipartiteInstance,
    caterpillar_embedding,
    covering_matching,
    gen_caterpillar,
    gen_matching_to_stars,
    gen_matching_to_stars_plus_bigstar,
    has_consistent_perfect_matching,
    matching_embedding,
)
from .expansion import expand, expanded_tournament
from .sat22 import Formula, assignment_embedding, gen_sat22, is_satisfiable

__all__ = [
    "ReductionOutput", "expand", "expanded_tournament", "gen_clique_to_expansion", "has_clique",
    "gen_antidirected", "has_antidirected_path", "has_pair_avoiding_path",
    "BipartiteInstance", "gen_matching_to_stars", "gen_matching_to_stars_plus_bigstar",
    "gen_caterpillar", "caterpillar_embedding", "covering_matching",
    "has_consistent_perfect_matching", "matching_embedding",
    "Formula", "gen_sat22", "is_satisfiable", "assignment_embedding",
]

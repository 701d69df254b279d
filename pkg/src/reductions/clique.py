"""
Clique to expansion-of-tournament subdigraph isomorphism
"""

from itertools import combinations
from typing import Iterable, List, Sequence, Tuple

from ..graph.digraph import Digraph, from_arc_list
from .base import ReductionOutput
from .expansion import expand, expanded_tournament

Edge = Tuple[int, int]


def orient_forward(n: int, edges: Iterable[Edge]) -> Digraph:
    """Orient every edge from the smaller to the larger vertex id."""
    arcs = sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})
    return from_arc_list(n, arcs)


def gen_clique_to_expansion(n: int, edges: Sequence[Edge], k: int) -> ReductionOutput:
    """
    Host: expansion of the forward orientation of g. Target: expansion of TT_k.

    A copy of the target forces its originals onto k pairwise adjacent
    vertices of g, so a host with a copy always comes from a graph with a
    k-clique. The converse can fail: the arborescence grown at a vertex
    follows its host out-degree, so the paths between clique vertices may
    be longer than the ones the target asks for.
    """
    if k < 1:
        raise ValueError("k must be positive")
    host, roles = expand(orient_forward(n, edges))
    return ReductionOutput(host=host, target=expanded_tournament(k), expected_dtw_bound=3,
                           roles=roles, params={"k": k})


def has_clique(n: int, edges: Sequence[Edge], k: int) -> bool:
    """Brute-force clique check."""
    adjacent = {(min(u, v), max(u, v)) for u, v in edges}
    return any(all((a, b) in adjacent for a, b in combinations(group, 2))
               for group in combinations(range(n), k))


def clique_vertices(n: int, edges: Sequence[Edge], k: int) -> List[int]:
    adjacent = {(min(u, v), max(u, v)) for u, v in edges}
    for group in combinations(range(n), k):
        if all((a, b) in adjacent for a, b in combinations(group, 2)):
            return list(group)
    return []

"""Maximum-cardinality matching on general undirected graphs."""

from typing import Iterable, List, Tuple

import networkx as nx

Edge = Tuple[int, int]


def max_matching(edges: Iterable[Edge]) -> List[Edge]:
    """
    Exact maximum-cardinality matching (Edmonds' blossom algorithm via networkx).

    Args:
        edges: undirected edges (u, v); loops and duplicates are ignored

    Returns:
        Matched edges as (min, max) pairs, sorted
    """
    graph = nx.Graph()
    for u, v in edges:
        if u != v:
            graph.add_edge(u, v)
    if graph.number_of_edges() == 0:
        return []
    matched = nx.max_weight_matching(graph, maxcardinality=True)
    return sorted((min(u, v), max(u, v)) for u, v in matched)

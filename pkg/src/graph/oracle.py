"""
Brute-force subdigraph isomorphism, the ground truth for every solver
"""

from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from ..config import ORACLE_PATTERN_CAP
from ..errors import PatternTooLarge
from .digraph import Digraph
from .pattern import Embedding, StarsPathsPattern, embedding_from_map, pattern_to_digraph


def _search_order(p: Digraph, pinned: Dict[int, int]) -> List[int]:
    """Pinned vertices first, then always the vertex with most ordered neighbors (ties: degree)."""
    order = sorted(pinned)
    placed = set(order)
    remaining = set(p.vertices()) - placed
    while remaining:
        best = max(remaining, key=lambda x: (len(p.neighbors(x) & placed), p.degree(x), -x))
        order.append(best)
        placed.add(best)
        remaining.discard(best)
    return order


def _earlier_twins(p: Digraph, order: List[int], position: Dict[int, int],
                   pinned: Dict[int, int]) -> List[List[int]]:
    """
    Per search position: unpinned loopless vertices with the same in- and
    out-neighborhoods that are placed before it. Twins are interchangeable,
    so their images are kept in the order of their ids.
    """
    groups: Dict[Tuple[FrozenSet[int], FrozenSet[int]], List[int]] = {}
    for x in order:
        if x in pinned or p.has_loop(x):
            continue
        key = (frozenset(p.out_neighbors(x)), frozenset(p.in_neighbors(x)))
        groups.setdefault(key, []).append(x)
    earlier: List[List[int]] = [[] for _ in order]
    for members in groups.values():
        for x in members:
            earlier[position[x]] = [y for y in members if position[y] < position[x]]
    return earlier


def find_subdigraph_map(d: Digraph, p: Digraph, pinned: Optional[Dict[int, int]] = None,
                        cap: Optional[int] = ORACLE_PATTERN_CAP) -> Optional[Dict[int, int]]:
    """
    Find an injective map V(p) -> V(d) preserving every arc of p (loops included).

    Args:
        d: host digraph
        p: pattern digraph
        pinned: pattern vertices whose image is fixed
        cap: maximum pattern size, None for no limit

    Returns:
        Vertex map, or None when p is not a subdigraph of d

    Raises:
        PatternTooLarge: p has more than ``cap`` vertices
    """
    if cap is not None and p.n > cap:
        raise PatternTooLarge(f"Pattern has {p.n} vertices, cap is {cap}")
    pinned = dict(pinned or {})
    for host_vertex in pinned.values():
        d.check_vertex(host_vertex)
    if len(set(pinned.values())) != len(pinned):
        return None
    if p.n > d.n:
        return None
    if p.n == 0:
        return {}

    order = _search_order(p, pinned)
    position = {x: i for i, x in enumerate(order)}
    # Per vertex: arcs towards earlier vertices, split by direction
    back_out: List[List[int]] = []
    back_in: List[List[int]] = []
    for x in order:
        back_out.append([y for y in p.out_neighbors(x) if y != x and position[y] < position[x]])
        back_in.append([y for y in p.in_neighbors(x) if y != x and position[y] < position[x]])
    earlier_twins = _earlier_twins(p, order, position, pinned)

    mapping: Dict[int, int] = {}
    used = set()

    def candidates(i: int, x: int):
        if x in pinned:
            return [pinned[x]]
        if back_in[i]:
            return sorted(d.out_neighbors(mapping[back_in[i][0]]))
        if back_out[i]:
            return sorted(d.in_neighbors(mapping[back_out[i][0]]))
        return list(d.vertices())

    def fits(i: int, x: int, c: int) -> bool:
        if c in used:
            return False
        if d.out_degree(c) < p.out_degree(x) or d.in_degree(c) < p.in_degree(x):
            return False
        if p.has_loop(x) and not d.has_loop(c):
            return False
        for y in back_out[i]:
            if not d.has_arc(c, mapping[y]):
                return False
        for y in back_in[i]:
            if not d.has_arc(mapping[y], c):
                return False
        for y in earlier_twins[i]:
            if (y < x) != (mapping[y] < c):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for c in candidates(i, x):
            if fits(i, x, c):
                mapping[x] = c
                used.add(c)
                if extend(i + 1):
                    return True
                used.discard(c)
                del mapping[x]
        return False

    return dict(mapping) if extend(0) else None


def oracle_find_pattern(d: Digraph, h: Union[StarsPathsPattern, Digraph],
                        cap: Optional[int] = ORACLE_PATTERN_CAP) -> Optional[Embedding]:
    """
    Search for a (not necessarily induced) subdigraph of d isomorphic to h.

    Stars-paths patterns carrying roots have their centers pinned.

    Returns:
        Embedding or None

    Raises:
        PatternTooLarge: h exceeds ``cap`` vertices
    """
    if isinstance(h, StarsPathsPattern):
        p, layout = pattern_to_digraph(h)
        pinned = dict(zip(layout.centers, h.roots)) if h.roots is not None else {}
        mapping = find_subdigraph_map(d, p, pinned, cap)
        return embedding_from_map(h, layout, mapping) if mapping is not None else None
    mapping = find_subdigraph_map(d, h, None, cap)
    return Embedding(vertex_map=mapping) if mapping is not None else None


def is_embedding_map(d: Digraph, p: Digraph, mapping: Dict[int, int]) -> Tuple[bool, str]:
    """Check that a vertex map is injective and preserves every arc of p."""
    if sorted(mapping) != list(p.vertices()):
        return False, "map does not cover the pattern"
    if len(set(mapping.values())) != len(mapping):
        return False, "map is not injective"
    for u, v in p.arcs:
        if not d.has_arc(mapping[u], mapping[v]):
            return False, f"arc {u}->{v} not preserved"
    return True, ""

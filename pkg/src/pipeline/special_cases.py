"""
Targets that reduce to maximum matching: disjoint arcs and once-subdivided stars
"""

from typing import List, Literal, Optional, Tuple

from ..graph.digraph import Arc, Digraph
from ..graph.matching import max_matching
from ..graph.pattern import Embedding, PatternPath, Star, StarsPathsPattern

Orientation = Literal["out", "in"]


def disjoint_arcs_pattern(l: int) -> StarsPathsPattern:
    """l disjoint arcs, written as l one-leaf out-stars."""
    if l < 1:
        raise ValueError("The disjoint-arcs pattern needs l >= 1")
    return StarsPathsPattern(stars=[Star(out_leaves=1) for _ in range(l)])


def once_subdivided_star_pattern(l: int, orientation: Orientation = "out") -> StarsPathsPattern:
    """
    Star with l arcs each subdivided once.

    Center 0 reaches (or is reached from) spoke centers 1..l by direct
    paths; every spoke is a one-leaf star in the same orientation.
    """
    if l < 0:
        raise ValueError("l must be non-negative")
    if orientation == "out":
        spokes = [Star(out_leaves=1) for _ in range(l)]
        paths = [PatternPath(source=0, target=i, vertex_count=2) for i in range(1, l + 1)]
    else:
        spokes = [Star(in_leaves=1) for _ in range(l)]
        paths = [PatternPath(source=i, target=0, vertex_count=2) for i in range(1, l + 1)]
    return StarsPathsPattern(stars=[Star()] + spokes, paths=paths)


def _orient(d: Digraph, edge: Tuple[int, int], tail_side: frozenset) -> Arc:
    """Pick an arc of d on the undirected edge, preferring one whose tail is in ``tail_side``."""
    u, v = edge
    options = [(a, b) for a, b in ((u, v), (v, u)) if d.has_arc(a, b) and a in tail_side]
    if not options:
        options = [(a, b) for a, b in ((u, v), (v, u)) if d.has_arc(a, b)]
    return min(options)


def find_disjoint_arcs(d: Digraph, l: int) -> Optional[Embedding]:
    """
    l pairwise vertex-disjoint arcs of d.

    Returns:
        Embedding with one one-leaf out-star per arc, or None
    """
    if l < 0:
        raise ValueError("l must be non-negative")
    if l == 0:
        return Embedding()
    matching = max_matching(d.underlying_edges())
    if len(matching) < l:
        return None
    arcs = [_orient(d, e, frozenset(d.vertices())) for e in matching[:l]]
    return Embedding(star_centers=[a for a, _ in arcs], star_leaves=[[b] for _, b in arcs])


def find_once_subdivided_star(d: Digraph, l: int, orientation: Orientation = "out") -> Optional[Embedding]:
    """
    Once-subdivided l-star, trying centers in increasing order.

    For a center v the candidate arcs have one end in the neighborhood of v
    on the spoke side (tail for out-stars, head for in-stars) and no end at
    v; the star exists at v iff these arcs hold a matching of size l.

    Returns:
        Embedding shaped like once_subdivided_star_pattern(l, orientation), or None
    """
    if l < 0:
        raise ValueError("l must be non-negative")
    for v in d.vertices():
        if orientation == "out":
            spokes = d.out_neighbors(v) - {v}
            candidates = [(x, y) for x in spokes for y in d.out_neighbors(x) if y not in (v, x)]
        else:
            spokes = d.in_neighbors(v) - {v}
            candidates = [(x, y) for y in spokes for x in d.in_neighbors(y) if x not in (v, y)]
        matching = max_matching(candidates)
        if len(matching) < l:
            continue
        centers: List[int] = [v]
        leaves: List[List[int]] = [[]]
        paths: List[List[int]] = []
        for edge in matching[:l]:
            if orientation == "out":
                spoke, second = _orient(d, edge, spokes)
                paths.append([v, spoke])
            else:
                second, spoke = _orient_in(d, edge, spokes)
                paths.append([spoke, v])
            centers.append(spoke)
            leaves.append([second])
        return Embedding(star_centers=centers, star_leaves=leaves, path_vertices=paths)
    return None


def _orient_in(d: Digraph, edge: Tuple[int, int], head_side: frozenset) -> Arc:
    u, v = edge
    options = [(a, b) for a, b in ((u, v), (v, u)) if d.has_arc(a, b) and b in head_side]
    return min(options)

"""
Expansion: bounding the degree of a digraph with arborescences, antiparallel arcs and loops.

Vertex ids: originals keep their ids, internal vertices follow in creation
order. Type-1 internals come from the out-arborescences, type-2 internals
from the in-arborescences of the second phase.
"""

from typing import Dict, List, Set, Tuple

from ..errors import HasLoops
from ..graph.digraph import Arc, Digraph, transitive_tournament
from .base import ReductionOutput

ORIGINAL = "original"
TYPE1 = "type1"
TYPE2 = "type2"


class _Builder:
    """Mutable arc set with vertex roles, used while the expansion is built."""

    def __init__(self, d: Digraph):
        self.n = d.n
        self.arcs: Set[Arc] = set(d.arcs)
        self.roles: Dict[int, str] = {v: ORIGINAL for v in d.vertices()}

    def new_vertex(self, role: str) -> int:
        v = self.n
        self.n += 1
        self.roles[v] = role
        return v

    def out_of(self, v: int) -> List[int]:
        return sorted(b for a, b in self.arcs if a == v and b != v)

    def into(self, v: int) -> List[int]:
        return sorted(a for a, b in self.arcs if b == v and a != v)

    def both_ways(self, u: int, v: int) -> None:
        self.arcs.add((u, v))
        self.arcs.add((v, u))


def _grow(builder: _Builder, root: int, leaves: List[int], role: str, outward: bool,
          tree_arcs: List[Arc]) -> None:
    """Balanced binary arborescence below ``root``; the left part gets the extra leaf."""
    if len(leaves) <= 2:
        parts = [[x] for x in leaves]
    else:
        mid = (len(leaves) + 1) // 2
        parts = [leaves[:mid], leaves[mid:]]
    for part in parts:
        if len(part) == 1:
            child = part[0]
        else:
            child = builder.new_vertex(role)
            _grow(builder, child, part, role, outward, tree_arcs)
        tree_arcs.append((root, child) if outward else (child, root))


def _process(builder: _Builder, u: int, neighbors: List[int], role: str, outward: bool) -> None:
    for x in neighbors:
        builder.arcs.discard((u, x) if outward else (x, u))
    tree_arcs: List[Arc] = []
    _grow(builder, u, neighbors, role, outward, tree_arcs)

    # every arc at the root gets an internal vertex
    final: List[Arc] = []
    root_side: List[int] = []
    for a, b in tree_arcs:
        far = b if outward else a
        if (a == u or b == u) and builder.roles[far] != role:
            mid = builder.new_vertex(role)
            final.extend([(u, mid), (mid, far)] if outward else [(far, mid), (mid, u)])
            root_side.append(mid)
        else:
            final.append((a, b))
            if a == u or b == u:
                root_side.append(far)
    for a, b in final:
        if builder.roles.get(a) == role and builder.roles.get(b) == role and a != u and b != u:
            builder.both_ways(a, b)
        else:
            builder.arcs.add((a, b))
    if len(root_side) == 2 and all(builder.roles[x] == role for x in root_side):
        builder.both_ways(root_side[0], root_side[1])


def expand(d: Digraph) -> Tuple[Digraph, Dict[int, str]]:
    """
    Build the expansion of a loop-free digraph.

    Returns:
        (expansion, roles) with roles 'original', 'type1' or 'type2'

    Raises:
        HasLoops: d has a loop
    """
    if d.loops():
        raise HasLoops("expand needs a loop-free digraph")
    builder = _Builder(d)
    originals = list(d.vertices())
    for u in originals:
        neighbors = sorted(d.out_neighbors(u))
        if neighbors:
            _process(builder, u, neighbors, TYPE1, outward=True)
    for u in originals:
        builder.arcs.add((u, u))
    for u in originals:
        neighbors = builder.into(u)
        if len(neighbors) > 2:
            _process(builder, u, neighbors, TYPE2, outward=False)
    return Digraph(builder.n, sorted(builder.arcs), allow_loops=True), dict(builder.roles)


def expanded_tournament(k: int) -> Digraph:
    """Expansion of the transitive tournament on k vertices."""
    expansion, _ = expand(transitive_tournament(k))
    return expansion


def expansion_output(d: Digraph) -> ReductionOutput:
    expansion, roles = expand(d)
    return ReductionOutput(host=expansion, roles=roles, expected_dtw_bound=3)

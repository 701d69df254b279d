"""
Digraph: the host/target representation shared by every module
"""

from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from ..errors import ArcNotFound, BadVertexId, DuplicateArc, LoopForbidden

Arc = Tuple[int, int]


class Digraph:
    """
    Immutable simple digraph on vertices 0..n-1.

    Arcs are kept in insertion order next to two adjacency indexes
    (out- and in-neighborhoods). Loops are only accepted when the digraph
    is built with ``allow_loops=True``; a loop contributes to both the out-
    and in-degree of its vertex.
    """

    __slots__ = ("_n", "_arcs", "_allow_loops", "_out", "_in", "_arc_set")

    def __init__(self, n: int, arcs: Sequence[Arc], allow_loops: bool = False):
        """
        Build a digraph. Prefer :func:`from_arc_list`, which reports errors.

        Args:
            n: vertex count
            arcs: (tail, head) pairs, already validated
            allow_loops: whether loops are permitted
        """
        self._n = n
        self._arcs = tuple((int(u), int(v)) for u, v in arcs)
        self._allow_loops = allow_loops
        out: List[Set[int]] = [set() for _ in range(n)]
        inc: List[Set[int]] = [set() for _ in range(n)]
        for u, v in self._arcs:
            out[u].add(v)
            inc[v].add(u)
        self._out = tuple(frozenset(s) for s in out)
        self._in = tuple(frozenset(s) for s in inc)
        self._arc_set = frozenset(self._arcs)

    # ----- Basic accessors -----

    @property
    def n(self) -> int:
        return self._n

    @property
    def arcs(self) -> List[Arc]:
        return list(self._arcs)

    @property
    def allow_loops(self) -> bool:
        return self._allow_loops

    def vertices(self) -> range:
        return range(self._n)

    def arc_count(self) -> int:
        return len(self._arcs)

    def out_neighbors(self, v: int) -> FrozenSet[int]:
        return self._out[v]

    def in_neighbors(self, v: int) -> FrozenSet[int]:
        return self._in[v]

    def neighbors(self, v: int) -> FrozenSet[int]:
        """Out- and in-neighbors of v, v itself excluded."""
        return (self._out[v] | self._in[v]) - {v}

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def degree(self, v: int) -> int:
        return len(self._out[v]) + len(self._in[v])

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arc_set

    def has_loop(self, v: int) -> bool:
        return (v, v) in self._arc_set

    def loops(self) -> List[int]:
        return sorted(u for u, v in self._arcs if u == v)

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self._arcs)

    def underlying_edges(self) -> List[Tuple[int, int]]:
        """Edges of the underlying simple undirected graph (loops dropped)."""
        edges = {(min(u, v), max(u, v)) for u, v in self._arcs if u != v}
        return sorted(edges)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise BadVertexId(f"Vertex {v} out of range for digraph with {self._n} vertices")

    # ----- Derived digraphs -----

    def without_loops(self) -> "Digraph":
        return Digraph(self._n, [a for a in self._arcs if a[0] != a[1]], allow_loops=False)

    def reverse(self) -> "Digraph":
        return Digraph(self._n, [(v, u) for u, v in self._arcs], allow_loops=self._allow_loops)

    def with_extra(self, extra_vertices: int, extra_arcs: Iterable[Arc]) -> "Digraph":
        """Return a copy with new vertices appended and arcs added."""
        return from_arc_list(self._n + extra_vertices, list(self._arcs) + list(extra_arcs),
                             allow_loops=self._allow_loops)

    # ----- Dunder -----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self._n == other._n and self._allow_loops == other._allow_loops
                and self._arc_set == other._arc_set)

    def __hash__(self) -> int:
        return hash((self._n, self._allow_loops, self._arc_set))

    def __iter__(self) -> Iterator[Arc]:
        return iter(self._arcs)

    def __repr__(self) -> str:
        return f"Digraph(n={self._n}, arcs={len(self._arcs)}, loops={self._allow_loops})"


def from_arc_list(n: int, arcs: Iterable[Arc], allow_loops: bool = False) -> Digraph:
    """
    Build a validated digraph.

    Args:
        n: vertex count
        arcs: (tail, head) pairs with 0-based ids
        allow_loops: accept loops (tail == head)

    Returns:
        Digraph with adjacency indexes built

    Raises:
        BadVertexId, DuplicateArc, LoopForbidden
    """
    if n < 0:
        raise BadVertexId(f"Vertex count must be non-negative, got {n}")
    seen: Set[Arc] = set()
    arc_list: List[Arc] = []
    for u, v in arcs:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise BadVertexId(f"Arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v and not allow_loops:
            raise LoopForbidden(f"Loop on vertex {u} but loops are not allowed")
        if (u, v) in seen:
            raise DuplicateArc(f"Arc ({u}, {v}) given twice")
        seen.add((u, v))
        arc_list.append((u, v))
    return Digraph(n, arc_list, allow_loops=allow_loops)


def subdivide(d: Digraph, arc: Arc, times: int = 1) -> Digraph:
    """
    Replace an arc by a directed path through ``times`` new vertices.

    New vertices get ids n, n+1, ... in path order.

    Raises:
        ArcNotFound: the arc is not in d
        ValueError: times < 1
    """
    if times < 1:
        raise ValueError(f"times must be at least 1, got {times}")
    u, v = arc
    if not d.has_arc(u, v):
        raise ArcNotFound(f"Arc ({u}, {v}) not in digraph")
    chain = [u] + list(range(d.n, d.n + times)) + [v]
    arcs = [a for a in d.arcs if a != (u, v)]
    arcs.extend(zip(chain, chain[1:]))
    return Digraph(d.n + times, arcs, allow_loops=d.allow_loops)


def induced_arcs(d: Digraph, vertices: Iterable[int]) -> List[Arc]:
    """Arcs of d with both endpoints in ``vertices``."""
    keep = set(vertices)
    return [(u, v) for u, v in d.arcs if u in keep and v in keep]


def directed_path(n: int) -> Digraph:
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def antidirected_path(n: int) -> Digraph:
    """Path 0-1-...-(n-1) whose arcs alternate, 0 being a source."""
    arcs = [(i, i + 1) if i % 2 == 0 else (i + 1, i) for i in range(n - 1)]
    return Digraph(n, arcs)


def transitive_tournament(n: int) -> Digraph:
    """Acyclic orientation of K_n along the vertex order."""
    return Digraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def out_star(leaves: int, subdivisions: int = 0) -> Digraph:
    """Out-star with center 0 whose arcs are each subdivided ``subdivisions`` times."""
    arcs: List[Arc] = []
    nxt = 1
    for _ in range(leaves):
        prev = 0
        for _ in range(subdivisions + 1):
            arcs.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Digraph(nxt, arcs)


def disjoint_union(parts: Sequence[Digraph]) -> Tuple[Digraph, List[int]]:
    """Disjoint union; returns the digraph and the id offset of each part."""
    offsets: List[int] = []
    arcs: List[Arc] = []
    total = 0
    loops = any(p.allow_loops for p in parts)
    for p in parts:
        offsets.append(total)
        arcs.extend((u + total, v + total) for u, v in p.arcs)
        total += p.n
    return Digraph(total, arcs, allow_loops=loops), offsets


def relabel(d: Digraph, mapping: Dict[int, int], n: Optional[int] = None) -> Digraph:
    """Apply an injective vertex map (missing vertices are dropped with their arcs)."""
    size = n if n is not None else (max(mapping.values()) + 1 if mapping else 0)
    arcs = [(mapping[u], mapping[v]) for u, v in d.arcs if u in mapping and v in mapping]
    return from_arc_list(size, arcs, allow_loops=d.allow_loops)

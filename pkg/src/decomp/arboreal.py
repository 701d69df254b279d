"""
Arboreal decompositions: guarded sets, validation and width
"""

from collections import deque
from typing import Dict, Iterable, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import GuardViolation, NotADag, NotAPartition, OverlappingSets
from ..graph.digraph import Digraph
from ..graph.traversal import ancestors, descendants, is_dag, topological_order


class TreeEdge(BaseModel):
    """Arc of the decomposition tree with its guard set."""

    model_config = ConfigDict(frozen=True)

    parent: int
    child: int
    guard: List[int] = Field(default_factory=list)


class ArborealDecomposition(BaseModel):
    """
    Rooted out-arborescence over nodes 0..nodes-1 with a bag per node and a guard per tree arc.
    """

    model_config = ConfigDict(frozen=True)

    nodes: int = Field(ge=1)
    root: int
    bags: Dict[int, List[int]]
    edges: List[TreeEdge] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_tree(self) -> "ArborealDecomposition":
        if not 0 <= self.root < self.nodes:
            raise ValueError(f"Root {self.root} is not a node")
        if sorted(self.bags) != list(range(self.nodes)):
            raise ValueError("Every node needs exactly one bag")
        parents: Dict[int, int] = {}
        for e in self.edges:
            if not (0 <= e.parent < self.nodes and 0 <= e.child < self.nodes):
                raise ValueError(f"Tree arc ({e.parent}, {e.child}) uses an unknown node")
            if e.child in parents or e.child == self.root:
                raise ValueError(f"Node {e.child} has more than one parent")
            parents[e.child] = e.parent
        if len(parents) != self.nodes - 1:
            raise ValueError("Tree must have nodes - 1 arcs")
        # every node must reach the root through parents
        for v in range(self.nodes):
            steps, cur = 0, v
            while cur != self.root:
                cur = parents[cur]
                steps += 1
                if steps > self.nodes:
                    raise ValueError("Tree arcs contain a cycle")
        return self

    def children(self, node: int) -> List[int]:
        return sorted(e.child for e in self.edges if e.parent == node)

    def edge_to(self, child: int) -> Optional[TreeEdge]:
        for e in self.edges:
            if e.child == child:
                return e
        return None

    def incident_edges(self, node: int) -> List[TreeEdge]:
        return [e for e in self.edges if e.parent == node or e.child == node]

    def subtree_nodes(self, node: int) -> List[int]:
        out, stack = [], [node]
        while stack:
            cur = stack.pop()
            out.append(cur)
            stack.extend(self.children(cur))
        return sorted(out)

    def subtree_vertices(self, node: int) -> Set[int]:
        verts: Set[int] = set()
        for x in self.subtree_nodes(node):
            verts.update(self.bags[x])
        return verts

    def below_set(self, edge: TreeEdge) -> Set[int]:
        """B_e: union of the bags strictly below the arc."""
        return self.subtree_vertices(edge.child)

    def node_width_set(self, node: int) -> Set[int]:
        """W_r together with the guards of all incident tree arcs."""
        verts = set(self.bags[node])
        for e in self.incident_edges(node):
            verts.update(e.guard)
        return verts

    def width(self) -> int:
        return max(len(self.node_width_set(r)) for r in range(self.nodes)) - 1


class GuardCertificate(BaseModel):
    """Walk that starts and ends in S, leaves S, and avoids Z."""

    violating_walk: Optional[List[int]] = None


class DecompositionReport(BaseModel):
    """Non-raising outcome of a decomposition check."""

    valid: bool
    width: int = -1
    error: str = ""
    edge: Optional[Tuple[int, int]] = None
    walk: Optional[List[int]] = None


def _bfs_walk(d: Digraph, sources: Set[int], goal: Set[int], forbidden: Set[int]) -> Optional[List[int]]:
    """Shortest walk (>= 1 arc) from ``sources`` to ``goal`` in d minus ``forbidden``."""
    parent: Dict[int, int] = {}
    queue = deque()
    for s in sorted(sources):
        if s in forbidden:
            continue
        for v in sorted(d.out_neighbors(s)):
            if v not in forbidden and v not in parent:
                parent[v] = s
                queue.append(v)
    while queue:
        u = queue.popleft()
        if u in goal:
            walk = [u]
            cur = u
            while True:
                prev = parent[cur]
                walk.append(prev)
                if prev in sources:
                    break
                cur = prev
            return walk[::-1]
        for v in sorted(d.out_neighbors(u)):
            if v not in forbidden and v not in parent:
                parent[v] = u
                queue.append(v)
    return None


def is_guarded(d: Digraph, s: Iterable[int], z: Iterable[int]) -> Tuple[bool, GuardCertificate]:
    """
    Decide whether S is Z-guarded: no walk in d - Z starts and ends in S and visits V - (S u Z).

    Returns:
        (guarded, certificate); the certificate carries a violating walk on failure

    Raises:
        OverlappingSets: S and Z intersect
    """
    s_set, z_set = set(s), set(z)
    if s_set & z_set:
        raise OverlappingSets(f"Sets intersect in {sorted(s_set & z_set)}")
    if not s_set:
        return True, GuardCertificate()
    outside = descendants(d, s_set, z_set) & ancestors(d, s_set, z_set)
    outside -= s_set
    if not outside:
        return True, GuardCertificate()
    t = min(outside)
    there = _bfs_walk(d, s_set, {t}, z_set)
    back = _bfs_walk(d, {t}, s_set, z_set)
    return False, GuardCertificate(violating_walk=there + back[1:])


def validate(d: Digraph, dec: ArborealDecomposition) -> Tuple[bool, int]:
    """
    Validate an arboreal decomposition of d.

    Returns:
        (True, width) when valid

    Raises:
        NotAPartition: bags do not partition V(d)
        GuardViolation: some B_e - X_e is not X_e-guarded
    """
    seen: Set[int] = set()
    for node in range(dec.nodes):
        bag = dec.bags[node]
        if not bag:
            raise NotAPartition(f"Bag of node {node} is empty")
        for v in bag:
            if not 0 <= v < d.n:
                raise NotAPartition(f"Bag of node {node} has unknown vertex {v}")
            if v in seen:
                raise NotAPartition(f"Vertex {v} lies in more than one bag")
            seen.add(v)
    if len(seen) != d.n:
        missing = sorted(set(d.vertices()) - seen)
        raise NotAPartition(f"Vertices {missing} are in no bag")
    for e in dec.edges:
        for v in e.guard:
            if not 0 <= v < d.n:
                raise NotAPartition(f"Guard of ({e.parent}, {e.child}) has unknown vertex {v}")
        guard = set(e.guard)
        below = dec.below_set(e) - guard
        ok, cert = is_guarded(d, below, guard)
        if not ok:
            raise GuardViolation((e.parent, e.child), cert.violating_walk)
    return True, dec.width()


def check_decomposition(d: Digraph, dec: ArborealDecomposition) -> DecompositionReport:
    """validate() without exceptions, for reporting."""
    try:
        _, width = validate(d, dec)
    except GuardViolation as exc:
        return DecompositionReport(valid=False, error=str(exc), edge=exc.edge, walk=exc.walk)
    except NotAPartition as exc:
        return DecompositionReport(valid=False, error=str(exc))
    return DecompositionReport(valid=True, width=width)


def dag_decomposition(d: Digraph) -> ArborealDecomposition:
    """
    Path-shaped decomposition along the topological order with singleton bags and empty guards.

    Raises:
        NotADag: d has a cycle or a loop
    """
    if not is_dag(d):
        raise NotADag("dag_decomposition needs an acyclic digraph")
    if d.n == 0:
        raise ValueError("Cannot decompose an empty digraph")
    order = topological_order(d)
    bags = {i: [v] for i, v in enumerate(order)}
    edges = [TreeEdge(parent=i, child=i + 1) for i in range(len(order) - 1)]
    return ArborealDecomposition(nodes=len(order), root=0, bags=bags, edges=edges)


def trivial_decomposition(d: Digraph) -> ArborealDecomposition:
    """Single node holding every vertex (width n - 1)."""
    if d.n == 0:
        raise ValueError("Cannot decompose an empty digraph")
    return ArborealDecomposition(nodes=1, root=0, bags={0: list(d.vertices())})

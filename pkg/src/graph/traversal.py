"""
Traversal: reachability, components, acyclicity and topological order
"""

import heapq
from collections import deque
from typing import Iterable, List, Optional, Set

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import NotADag
from .digraph import Digraph


def _step_closure(d: Digraph, sources: Iterable[int], forbidden: Set[int], forward: bool) -> Set[int]:
    """Vertices reachable from ``sources`` by walks of length >= 1 avoiding ``forbidden``."""
    nbrs = d.out_neighbors if forward else d.in_neighbors
    seen: Set[int] = set()
    queue = deque()
    for s in sources:
        for v in nbrs(s):
            if v not in forbidden and v not in seen:
                seen.add(v)
                queue.append(v)
    while queue:
        u = queue.popleft()
        for v in nbrs(u):
            if v not in forbidden and v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def descendants(d: Digraph, sources: Iterable[int], forbidden: Iterable[int] = ()) -> Set[int]:
    """Vertices reached from ``sources`` by a walk of at least one arc in d minus ``forbidden``."""
    return _step_closure(d, sources, set(forbidden), forward=True)


def ancestors(d: Digraph, targets: Iterable[int], forbidden: Iterable[int] = ()) -> Set[int]:
    """Vertices reaching ``targets`` by a walk of at least one arc in d minus ``forbidden``."""
    return _step_closure(d, targets, set(forbidden), forward=False)


def reachable(d: Digraph, source: int, target: int, forbidden: Iterable[int] = ()) -> bool:
    """
    Decide whether a directed walk from ``source`` to ``target`` exists in d minus ``forbidden``.

    A vertex always reaches itself (walk of length zero).

    Raises:
        BadVertexId: an endpoint is out of range
        ValueError: an endpoint is forbidden
    """
    d.check_vertex(source)
    d.check_vertex(target)
    blocked = set(forbidden)
    if source in blocked or target in blocked:
        raise ValueError("Endpoints of a reachability query may not be forbidden")
    if source == target:
        return True
    return target in _step_closure(d, [source], blocked, forward=True)


def _adjacency_matrix(d: Digraph, vertices: List[int]) -> csr_matrix:
    index = {v: i for i, v in enumerate(vertices)}
    rows, cols = [], []
    for u, v in d.arcs:
        if u in index and v in index:
            rows.append(index[u])
            cols.append(index[v])
    data = np.ones(len(rows), dtype=np.int8)
    size = len(vertices)
    return csr_matrix((data, (rows, cols)), shape=(size, size))


def _components(d: Digraph, vertices: List[int], connection: str) -> List[Set[int]]:
    if not vertices:
        return []
    matrix = _adjacency_matrix(d, vertices)
    _, labels = connected_components(matrix, directed=True, connection=connection)
    groups: dict = {}
    for v, label in zip(vertices, labels):
        groups.setdefault(int(label), set()).add(v)
    return sorted(groups.values(), key=min)


def weak_components(d: Digraph, restrict: Optional[Iterable[int]] = None) -> List[Set[int]]:
    """
    Partition ``restrict`` (default: all vertices) into the weak components of d[restrict].

    Components are returned sorted by their smallest vertex.
    """
    vertices = sorted(set(restrict)) if restrict is not None else list(d.vertices())
    for v in vertices:
        d.check_vertex(v)
    return _components(d, vertices, "weak")


def strong_components(d: Digraph, restrict: Optional[Iterable[int]] = None) -> List[Set[int]]:
    """Strong components of d (or of d[restrict]), sorted by smallest vertex."""
    vertices = sorted(set(restrict)) if restrict is not None else list(d.vertices())
    return _components(d, vertices, "strong")


def is_dag(d: Digraph) -> bool:
    """True iff every strong component is a loop-free singleton."""
    if d.loops():
        return False
    return all(len(c) == 1 for c in strong_components(d))


def topological_order(d: Digraph, restrict: Optional[Iterable[int]] = None) -> List[int]:
    """
    Lexicographically smallest topological order (Kahn's algorithm with a heap).

    Raises:
        NotADag: d (or d[restrict]) has a cycle or a loop
    """
    vertices = set(restrict) if restrict is not None else set(d.vertices())
    indegree = {v: 0 for v in vertices}
    for u, v in d.arcs:
        if u in vertices and v in vertices:
            if u == v:
                raise NotADag(f"Loop on vertex {u}")
            indegree[v] += 1
    heap = [v for v, deg in indegree.items() if deg == 0]
    heapq.heapify(heap)
    order: List[int] = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in d.out_neighbors(u):
            if v in vertices:
                indegree[v] -= 1
                if indegree[v] == 0:
                    heapq.heappush(heap, v)
    if len(order) != len(vertices):
        raise NotADag("Digraph has a directed cycle")
    return order


def condensation_order(d: Digraph, groups: List[Set[int]]) -> List[int]:
    """
    Order group indices so that every arc between groups goes forward.

    ``groups`` must be the strong components of the arc relation between
    them (no cycles across groups). Ties are broken by smallest vertex.
    """
    owner = {}
    for i, g in enumerate(groups):
        for v in g:
            owner[v] = i
    succ: List[Set[int]] = [set() for _ in groups]
    for u, v in d.arcs:
        gu, gv = owner.get(u), owner.get(v)
        if gu is not None and gv is not None and gu != gv:
            succ[gu].add(gv)
    indegree = [0] * len(groups)
    for i in range(len(groups)):
        for j in succ[i]:
            indegree[j] += 1
    heap = [(min(groups[i]), i) for i in range(len(groups)) if indegree[i] == 0]
    heapq.heapify(heap)
    order: List[int] = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in succ[i]:
            indegree[j] -= 1
            if indegree[j] == 0:
                heapq.heappush(heap, (min(groups[j]), j))
    if len(order) != len(groups):
        raise NotADag("Groups are not acyclic under the arc relation")
    return order

"""
Seeded random instance families for test suites, benchmarks and the CLI.

Every generator takes a numpy Generator so that one seed reproduces a whole
suite.
"""

from typing import List, Optional, Tuple

import numpy as np

from ..config import RANDOM_ARC_PROBABILITY, RANDOM_MAX_LEAVES, RANDOM_MAX_PATH_VERTICES, RANDOM_SEED
from ..graph.digraph import Digraph, from_arc_list
from ..graph.pattern import PatternPath, Star, StarsPathsPattern
from ..pipeline.saddp import Request, SaddpInstance
from .consistent_matching import BipartiteInstance
from .sat22 import Formula


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(RANDOM_SEED if seed is None else seed)


def random_digraph(n: int, p: float = RANDOM_ARC_PROBABILITY,
                   rng: Optional[np.random.Generator] = None) -> Digraph:
    """Every ordered pair (u, v), u != v, becomes an arc with probability p."""
    rng = rng or make_rng()
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    return from_arc_list(n, [(int(u), int(v)) for u, v in np.argwhere(mask)])


def random_dag(n: int, p: float = RANDOM_ARC_PROBABILITY,
               rng: Optional[np.random.Generator] = None) -> Digraph:
    """Random DAG whose arcs follow a random vertex permutation."""
    rng = rng or make_rng()
    order = rng.permutation(n)
    arcs = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                arcs.append((int(order[a]), int(order[b])))
    return from_arc_list(n, arcs)


def random_pattern(k: int, r: int, rng: Optional[np.random.Generator] = None,
                   max_leaves: int = RANDOM_MAX_LEAVES,
                   max_path_vertices: int = RANDOM_MAX_PATH_VERTICES) -> StarsPathsPattern:
    """k stars with random leaf counts and r random paths between their centers."""
    rng = rng or make_rng()
    stars = []
    for _ in range(k):
        out_leaves = int(rng.integers(0, max_leaves + 1))
        in_leaves = int(rng.integers(0, max_leaves - out_leaves + 1))
        stars.append(Star(out_leaves=out_leaves, in_leaves=in_leaves))
    paths: List[PatternPath] = []
    direct = set()
    while len(paths) < r:
        s, t = int(rng.integers(0, k)), int(rng.integers(0, k))
        low = 3 if s == t else 2
        if low > max_path_vertices:
            continue
        size = int(rng.integers(low, max_path_vertices + 1))
        if size == 2:
            if (s, t) in direct:
                continue
            direct.add((s, t))
        paths.append(PatternPath(source=s, target=t, vertex_count=size))
    return StarsPathsPattern(stars=stars, paths=paths)


def random_saddp(d: Digraph, r: int, k: int, rng: Optional[np.random.Generator] = None,
                 max_size: int = RANDOM_MAX_PATH_VERTICES) -> SaddpInstance:
    """r open requests with random sizes and k random avoid sets with random budgets."""
    rng = rng or make_rng()
    if d.n < 2:
        raise ValueError("random_saddp needs at least two vertices")
    requests = []
    for _ in range(r):
        s, t = (int(x) for x in rng.choice(d.n, size=2, replace=False))
        requests.append(Request(source=s, target=t, size=int(rng.integers(2, max_size + 1))))
    avoid_sets, budgets = [], []
    for _ in range(k):
        members = [int(v) for v in np.flatnonzero(rng.random(d.n) < 0.4)]
        avoid_sets.append(members)
        budgets.append(int(rng.integers(0, len(members) + 1)))
    return SaddpInstance(d=d, requests=requests, avoid_sets=avoid_sets, budgets=budgets)


def random_graph(n: int, p: float = 0.5, rng: Optional[np.random.Generator] = None) -> List[Tuple[int, int]]:
    """Edges of a G(n, p) undirected graph."""
    rng = rng or make_rng()
    return [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]


def random_bipartite(size: int, p: float = 0.6, rng: Optional[np.random.Generator] = None) -> BipartiteInstance:
    """Balanced bipartite instance of max degree three with random parts of size <= 2."""
    rng = rng or make_rng()
    edges = []
    degree_left = [0] * size
    degree_right = [0] * size
    for i in range(size):
        for j in range(size):
            if degree_left[i] < 3 and degree_right[j] < 3 and rng.random() < p:
                edges.append((i, j))
                degree_left[i] += 1
                degree_right[j] += 1

    def parts() -> List[List[int]]:
        order = [int(v) for v in rng.permutation(size)]
        out, pos = [], 0
        while pos < size:
            width = 2 if pos + 1 < size and rng.random() < 0.5 else 1
            out.append(sorted(order[pos:pos + width]))
            pos += width
        return out

    return BipartiteInstance(left=size, right=size, edges=edges, left_parts=parts(), right_parts=parts())


def random_two_two_formula(variables: int, rng: Optional[np.random.Generator] = None,
                           attempts: int = 200) -> Optional[Formula]:
    """
    Random 3-SAT-(2,2) formula: every literal twice, clauses of three distinct variables.

    Returns None when no valid shuffle was found within ``attempts``.
    """
    rng = rng or make_rng()
    if (4 * variables) % 3:
        return None
    pool = [lit for v in range(1, variables + 1) for lit in (v, v, -v, -v)]
    for _ in range(attempts):
        order = [pool[int(i)] for i in rng.permutation(len(pool))]
        clauses = [order[i:i + 3] for i in range(0, len(order), 3)]
        if all(len({abs(x) for x in c}) == 3 for c in clauses):
            return Formula(variables=variables, clauses=clauses)
    return None

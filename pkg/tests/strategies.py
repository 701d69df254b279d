"""Hypothesis strategies shared by the property suites."""

from itertools import combinations_with_replacement, product
from typing import Iterator

from hypothesis import strategies as st

from src.graph.digraph import Digraph, from_arc_list
from src.graph.pattern import PatternPath, Star, StarsPathsPattern


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 6, acyclic: bool = False) -> Digraph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (not acyclic or u < v)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if acyclic:
        order = draw(st.permutations(list(range(n))))
        chosen = [(order[u], order[v]) for u, v in chosen]
    return from_arc_list(n, chosen)


@st.composite
def patterns(draw, max_k: int = 2, max_r: int = 2, max_vertices: int = 5) -> StarsPathsPattern:
    """Small patterns whose flattened digraph has at most ``max_vertices`` vertices."""
    k = draw(st.integers(min_value=1, max_value=max_k))
    budget = max_vertices - k
    stars = []
    for _ in range(k):
        out_leaves = draw(st.integers(min_value=0, max_value=min(2, budget)))
        budget -= out_leaves
        in_leaves = draw(st.integers(min_value=0, max_value=min(2 - out_leaves, budget)))
        budget -= in_leaves
        stars.append(Star(out_leaves=out_leaves, in_leaves=in_leaves))
    paths = []
    direct = set()
    for _ in range(draw(st.integers(min_value=0, max_value=max_r))):
        s = draw(st.integers(min_value=0, max_value=k - 1))
        t = draw(st.integers(min_value=0, max_value=k - 1))
        low = 3 if s == t else 2
        interior_low = low - 1 if s == t else low - 2
        if interior_low > budget:
            continue
        interior = draw(st.integers(min_value=interior_low, max_value=min(budget, interior_low + 1)))
        size = interior + 1 if s == t else interior + 2
        if size == 2:
            if (s, t) in direct:
                continue
            direct.add((s, t))
        budget -= interior
        paths.append(PatternPath(source=s, target=t, vertex_count=size))
    return StarsPathsPattern(stars=stars, paths=paths)


def all_patterns(max_vertices: int = 4, max_k: int = 2, max_r: int = 2) -> Iterator[StarsPathsPattern]:
    """Every pattern with at most ``max_vertices`` vertices, ``max_k`` stars and ``max_r`` paths."""
    shapes = [(o, i) for o in range(3) for i in range(3 - o)]
    for k in range(1, max_k + 1):
        options = [(s, t, size) for s in range(k) for t in range(k)
                   for size in range(3 if s == t else 2, max_vertices + 1)]
        for star_shapes in product(shapes, repeat=k):
            base = k + sum(o + i for o, i in star_shapes)
            if base > max_vertices:
                continue
            stars = [Star(out_leaves=o, in_leaves=i) for o, i in star_shapes]
            for r in range(max_r + 1):
                for chosen in combinations_with_replacement(options, r):
                    interior = sum(size - 1 if s == t else size - 2 for s, t, size in chosen)
                    if base + interior > max_vertices:
                        continue
                    direct = [(s, t) for s, t, size in chosen if size == 2]
                    if len(set(direct)) != len(direct):
                        continue
                    paths = [PatternPath(source=s, target=t, vertex_count=size) for s, t, size in chosen]
                    yield StarsPathsPattern(stars=stars, paths=paths)

"""
Exhaustive search for small-width arboreal decompositions with singleton bags.

The result is an upper bound on the directed treewidth: decompositions
with larger bags are never tried.
"""

from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from ..config import DTW_SEARCH_MAX_VERTICES
from ..errors import TooLarge
from ..graph.digraph import Digraph
from .arboreal import ArborealDecomposition, TreeEdge, validate

# (root vertex, [(block mask, guard mask, subtree)])
Subtree = Tuple[int, Tuple[Tuple[int, int, "Subtree"], ...]]


def _bits(mask: int) -> List[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def dtw_upper_small(d: Digraph, budget: int,
                    max_vertices: int = DTW_SEARCH_MAX_VERTICES) -> Optional[Tuple[int, ArborealDecomposition]]:
    """
    Smallest width reachable with singleton bags and guards of size <= ``budget``.

    Args:
        d: digraph with at most ``max_vertices`` vertices
        budget: maximum guard size

    Returns:
        (width, decomposition), or None when no such decomposition exists

    Raises:
        TooLarge: d is above the size cap
    """
    n = d.n
    if n > max_vertices:
        raise TooLarge(f"dtw_upper_small handles at most {max_vertices} vertices, got {n}")
    if n == 0:
        raise ValueError("Cannot decompose an empty digraph")
    out_mask = [sum(1 << v for v in d.out_neighbors(u) if v != u) for u in range(n)]
    in_mask = [sum(1 << v for v in d.in_neighbors(u) if v != u) for u in range(n)]
    full = (1 << n) - 1

    def closure(start: int, allowed: int, nbrs: List[int]) -> int:
        seen, frontier = 0, start
        while frontier:
            step = 0
            for v in _bits(frontier):
                step |= nbrs[v]
            step &= allowed & ~seen
            seen |= step
            frontier = step
        return seen

    @lru_cache(maxsize=None)
    def guarded(s: int, z: int) -> bool:
        allowed = full & ~z
        fwd = closure(s, allowed, out_mask)
        bwd = closure(s, allowed, in_mask)
        return (fwd & bwd & ~s) == 0

    def search(k: int) -> Optional[Subtree]:
        @lru_cache(maxsize=None)
        def decide(s: int, x_in: int) -> Optional[Subtree]:
            for v in _bits(s):
                base = x_in | (1 << v)
                if bin(base).count("1") > k + 1:
                    continue
                others = [u for u in range(n) if not (base >> u) & 1]
                room = k + 1 - bin(base).count("1")
                for extra_size in range(room + 1):
                    for extra in combinations(others, extra_size):
                        y = base | sum(1 << u for u in extra)
                        found = split(s & ~(1 << v), y)
                        if found is not None:
                            return v, found
            return None

        @lru_cache(maxsize=None)
        def block_guard(block: int, y: int) -> Optional[Tuple[int, Subtree]]:
            for guard in _submasks(y):
                if bin(guard).count("1") > budget:
                    continue
                if not guarded(block & ~guard, guard):
                    continue
                sub = decide(block, guard)
                if sub is not None:
                    return guard, sub
            return None

        @lru_cache(maxsize=None)
        def split(rest: int, y: int) -> Optional[Tuple[Tuple[int, int, Subtree], ...]]:
            if rest == 0:
                return ()
            low = rest & -rest
            remaining = rest & ~low
            for sub in _submasks(remaining):
                block = sub | low
                choice = block_guard(block, y)
                if choice is None:
                    continue
                tail = split(rest & ~block, y)
                if tail is not None:
                    return ((block, choice[0], choice[1]),) + tail
            return None

        return decide(full, 0)

    for k in range(n):
        tree = search(k)
        if tree is not None:
            dec = _to_decomposition(tree)
            _, width = validate(d, dec)
            return width, dec
    return None


def _to_decomposition(tree: Subtree) -> ArborealDecomposition:
    bags: Dict[int, List[int]] = {}
    edges: List[TreeEdge] = []

    def walk(sub: Subtree) -> int:
        node = len(bags)
        v, blocks = sub
        bags[node] = [v]
        for _, guard, child in blocks:
            child_node = walk(child)
            edges.append(TreeEdge(parent=node, child=child_node, guard=_bits(guard)))
        return node

    walk(tree)
    return ArborealDecomposition(nodes=len(bags), root=0, bags=bags, edges=edges)

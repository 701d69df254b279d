"""
Breakability: how many weak components a target can be split into inside a w-guarded set
"""

from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from ..config import BREAKABILITY_MAX_VERTICES
from ..errors import TooLarge
from ..graph.digraph import Digraph
from ..graph.traversal import strong_components


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reach_masks(d: Digraph, blocked: int) -> Tuple[List[int], List[int]]:
    """Per vertex: descendants and ancestors (walks of >= 1 arc) in d minus ``blocked``."""
    n = d.n
    out_adj = [sum(1 << v for v in d.out_neighbors(u)) & ~blocked for u in range(n)]
    in_adj = [sum(1 << v for v in d.in_neighbors(u)) & ~blocked for u in range(n)]

    def closure(u: int, adj: List[int]) -> int:
        seen, frontier = 0, adj[u]
        while frontier:
            seen |= frontier
            step = 0
            f = frontier
            while f:
                low = f & -f
                step |= adj[low.bit_length() - 1]
                f ^= low
            frontier = step & ~seen
        return seen

    desc = [0 if (blocked >> u) & 1 else closure(u, out_adj) for u in range(n)]
    anc = [0 if (blocked >> u) & 1 else closure(u, in_adj) for u in range(n)]
    return desc, anc


def _count_components(mask: int, adj: List[int]) -> int:
    count = 0
    while mask:
        low = mask & -mask
        comp, frontier = low, low
        while frontier:
            step = 0
            f = frontier
            while f:
                bit = f & -f
                step |= adj[bit.bit_length() - 1]
                f ^= bit
            frontier = step & mask & ~comp
            comp |= frontier
        mask &= ~comp
        count += 1
    return count


def breakability(d: Digraph, h_vertices: Iterable[int], w: int,
                 h_arcs: Optional[Iterable[Tuple[int, int]]] = None,
                 max_vertices: int = BREAKABILITY_MAX_VERTICES) -> int:
    """
    Maximum number of weak components of H[X] over all w-guarded sets X of d.

    H is d[h_vertices] unless ``h_arcs`` gives an explicit arc subset on
    ``h_vertices``. X ranges over every Z-guarded set with |Z| <= w and
    X disjoint from Z.

    Raises:
        TooLarge: d has more than ``max_vertices`` vertices
    """
    n = d.n
    if n > max_vertices:
        raise TooLarge(f"breakability handles at most {max_vertices} vertices, got {n}")
    h_mask = 0
    for v in h_vertices:
        d.check_vertex(v)
        h_mask |= 1 << v
    arcs = list(h_arcs) if h_arcs is not None else [
        (u, v) for u, v in d.arcs if (h_mask >> u) & 1 and (h_mask >> v) & 1]
    h_adj = [0] * n
    for u, v in arcs:
        if u != v:
            h_adj[u] |= 1 << v
            h_adj[v] |= 1 << u

    cache: Dict[int, int] = {}
    best = 0
    for size in range(min(w, n) + 1):
        for z in combinations(range(n), size):
            blocked = sum(1 << v for v in z)
            desc, anc = _reach_masks(d, blocked)
            free = [v for v in range(n) if not (blocked >> v) & 1]
            sccs = [sum(1 << v for v in c) for c in strong_components(d, free)]
            scc_desc = []
            scc_anc = []
            for c in sccs:
                dm = am = 0
                f = c
                while f:
                    bit = f & -f
                    dm |= desc[bit.bit_length() - 1]
                    am |= anc[bit.bit_length() - 1]
                    f ^= bit
                scc_desc.append(dm)
                scc_anc.append(am)
            count = len(sccs)
            vmask = [0] * (1 << count)
            dmask = [0] * (1 << count)
            amask = [0] * (1 << count)
            for m in range(1, 1 << count):
                low = m & -m
                i = low.bit_length() - 1
                prev = m ^ low
                vmask[m] = vmask[prev] | sccs[i]
                dmask[m] = dmask[prev] | scc_desc[i]
                amask[m] = amask[prev] | scc_anc[i]
                if dmask[m] & amask[m] & ~vmask[m]:
                    continue
                target = vmask[m] & h_mask
                if _popcount(target) <= best:
                    continue
                if target not in cache:
                    cache[target] = _count_components(target, h_adj)
                best = max(best, cache[target])
    return best

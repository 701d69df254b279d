"""
Pair-avoiding paths to antidirected paths in DAGs.

Every edge e = {u, v} of g (u < v) becomes an antidirected path P_e with
6k + 3 vertices from u to v, k being the largest number of pairs sharing
one edge. Its internal vertices a_1..a_{6k+1} alternate sink/source and the
usable ones are a_1, a_4, a_7, ... For each pair {e, f} the next unused
usable sink of P_e is identified with the next unused usable source of P_f.
"""

from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import BadPairs
from ..graph.digraph import Digraph, from_arc_list
from ..graph.traversal import is_dag
from .base import ReductionOutput

Edge = Tuple[int, int]


def _norm(e: Edge) -> Edge:
    return (min(e), max(e))


def _check_pairs(edges: List[Edge], pairs: Sequence[Tuple[Edge, Edge]]) -> List[Tuple[Edge, Edge]]:
    known = set(edges)
    if not pairs:
        raise BadPairs("At least one edge pair is required")
    seen = set()
    out = []
    for e, f in pairs:
        e, f = _norm(e), _norm(f)
        if e not in known or f not in known:
            raise BadPairs(f"Pair ({e}, {f}) uses an edge missing from the graph")
        if e == f:
            raise BadPairs(f"Pair ({e}, {f}) repeats an edge")
        key = frozenset((e, f))
        if key in seen:
            raise BadPairs(f"Pair ({e}, {f}) given twice")
        seen.add(key)
        out.append((e, f))
    return out


def gen_antidirected(n: int, edges: Sequence[Edge], s: int, t: int,
                     pairs: Sequence[Tuple[Edge, Edge]]) -> ReductionOutput:
    """
    Host DAG with an antidirected s-t path iff g has an s-t path using at most one edge of every pair.

    Raises:
        BadPairs: empty, repeated or unknown edge pairs
    """
    edge_list = sorted({_norm(e) for e in edges if e[0] != e[1]})
    checked = _check_pairs(edge_list, pairs)
    for v in (s, t):
        if not 0 <= v < n:
            raise ValueError(f"Terminal {v} is not a vertex of g")
    load = Counter(x for pair in checked for x in pair)
    k = max(load.values())
    inner = 6 * k + 1

    # raw ids: originals, then the inner vertices of each P_e in edge order
    internal: Dict[Edge, List[int]] = {}
    arcs: List[Tuple[int, int]] = []
    nxt = n
    for e in edge_list:
        ids = list(range(nxt, nxt + inner))
        nxt += inner
        internal[e] = ids
        chain = [e[0]] + ids + [e[1]]
        for j in range(len(chain) - 1):
            # chain[j] is a source when j is even
            arcs.append((chain[j], chain[j + 1]) if j % 2 == 0 else (chain[j + 1], chain[j]))

    usable_sinks = {e: [ids[3 * j] for j in range(0, 2 * k + 1, 2)] for e, ids in internal.items()}
    usable_sources = {e: [ids[3 * j] for j in range(1, 2 * k + 1, 2)] for e, ids in internal.items()}
    merged: Dict[int, int] = {}
    for e, f in checked:
        sink = usable_sinks[e].pop(0)
        source = usable_sources[f].pop(0)
        merged[source] = sink

    survivors = [v for v in range(nxt) if v not in merged]
    new_id = {v: i for i, v in enumerate(survivors)}
    for source, sink in merged.items():
        new_id[source] = new_id[sink]
    host = from_arc_list(len(survivors), sorted({(new_id[a], new_id[b]) for a, b in arcs}))
    if not is_dag(host):
        raise AssertionError("antidirected construction produced a cycle")

    roles = {v: "original" for v in range(n)}
    for v in range(n, nxt):
        roles.setdefault(new_id[v], "internal")
    for sink in merged.values():
        roles[new_id[sink]] = "identified"
    return ReductionOutput(host=host, target=None, expected_dtw_bound=0, roles=roles,
                           params={"k": k, "path_vertices": inner + 2}, terminals=(s, t))


def has_antidirected_path(d: Digraph, s: int, t: int) -> bool:
    """Simple s-t path in d whose arcs alternate direction (either first direction)."""
    if s == t:
        return True

    def walk(v: int, forward: bool, seen: set) -> bool:
        step = d.out_neighbors(v) if forward else d.in_neighbors(v)
        for x in step:
            if x in seen:
                continue
            if x == t:
                return True
            seen.add(x)
            if walk(x, not forward, seen):
                return True
            seen.discard(x)
        return False

    return walk(s, True, {s}) or walk(s, False, {s})


def has_pair_avoiding_path(n: int, edges: Sequence[Edge], s: int, t: int,
                           pairs: Sequence[Tuple[Edge, Edge]]) -> bool:
    """Simple s-t path in g that never uses both edges of a pair."""
    adj: Dict[int, List[int]] = {v: [] for v in range(n)}
    for u, v in {_norm(e) for e in edges if e[0] != e[1]}:
        adj[u].append(v)
        adj[v].append(u)
    normalized = [(_norm(e), _norm(f)) for e, f in pairs]
    if s == t:
        return True

    def ok(used: set) -> bool:
        return not any(e in used and f in used for e, f in normalized)

    def walk(v: int, seen: set, used: set) -> bool:
        for x in sorted(adj[v]):
            if x in seen:
                continue
            e = _norm((v, x))
            used.add(e)
            if ok(used):
                if x == t:
                    return True
                seen.add(x)
                if walk(x, seen, used):
                    return True
                seen.discard(x)
            used.discard(e)
        return False

    return walk(s, {s}, set())


def antidirected_witness(out: ReductionOutput) -> Optional[List[int]]:
    """An antidirected path between the output's terminals, if one exists (for reports)."""
    if out.terminals is None:
        return None
    s, t = out.terminals
    d = out.host
    path = [s]

    def walk(v: int, forward: bool) -> bool:
        step = d.out_neighbors(v) if forward else d.in_neighbors(v)
        for x in sorted(step):
            if x in path:
                continue
            path.append(x)
            if x == t or walk(x, not forward):
                return True
            path.pop()
        return False

    if s == t or walk(s, True) or walk(s, False):
        return path
    return None

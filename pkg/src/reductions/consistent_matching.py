"""
Consistent perfect matching to disjoint 2-out-stars (and the big-star and caterpillar variants).

Host layout: left vertices 0..L-1, right vertices L..L+R-1, one c(e) per
edge in edge order, then the F gadgets part-pair by part-pair, then (for
the variants) the extra vertices.
"""

from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, model_validator

from ..errors import BadPartition, TooFewEdges
from ..graph.digraph import Arc, from_arc_list
from ..graph.pattern import Embedding, PatternPath, Star, StarsPathsPattern
from .base import ReductionOutput

Edge = Tuple[int, int]


class BipartiteInstance(BaseModel):
    """Bipartite graph (left ids, right ids, edges) with partitions of both sides into parts of size <= 2."""

    left: int = Field(ge=0)
    right: int = Field(ge=0)
    edges: List[Edge] = Field(default_factory=list)
    left_parts: List[List[int]] = Field(default_factory=list)
    right_parts: List[List[int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_edges(self) -> "BipartiteInstance":
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("Repeated edge")
        for i, j in self.edges:
            if not (0 <= i < self.left and 0 <= j < self.right):
                raise ValueError(f"Edge ({i}, {j}) out of range")
        return self

    def check(self) -> None:
        """
        Raises:
            BadPartition: parts empty, larger than two, overlapping or not covering a side
        """
        for side, size, parts in (("left", self.left, self.left_parts), ("right", self.right, self.right_parts)):
            flat = [v for part in parts for v in part]
            if any(not 1 <= len(part) <= 2 for part in parts):
                raise BadPartition(f"Every {side} part must have one or two vertices")
            if sorted(flat) != list(range(size)):
                raise BadPartition(f"The {side} parts do not partition 0..{size - 1}")

    def degree_ok(self, limit: int = 3) -> bool:
        deg: Dict[Tuple[str, int], int] = {}
        for i, j in self.edges:
            deg[("l", i)] = deg.get(("l", i), 0) + 1
            deg[("r", j)] = deg.get(("r", j), 0) + 1
        return all(x <= limit for x in deg.values())

    def part_of_left(self) -> Dict[int, int]:
        return {v: p for p, part in enumerate(self.left_parts) for v in part}

    def part_of_right(self) -> Dict[int, int]:
        return {v: p for p, part in enumerate(self.right_parts) for v in part}

    def edges_between(self) -> Dict[Tuple[int, int], List[int]]:
        """Edge indices grouped by (left part, right part)."""
        pl, pr = self.part_of_left(), self.part_of_right()
        groups: Dict[Tuple[int, int], List[int]] = {}
        for idx, (i, j) in enumerate(self.edges):
            groups.setdefault((pl[i], pr[j]), []).append(idx)
        return groups


def is_consistent(inst: BipartiteInstance, matching: Sequence[int]) -> bool:
    """No two matched edges connect the same left part with the same right part."""
    groups = set()
    pl, pr = inst.part_of_left(), inst.part_of_right()
    for idx in matching:
        i, j = inst.edges[idx]
        key = (pl[i], pr[j])
        if key in groups:
            return False
        groups.add(key)
    return True


def consistent_perfect_matching(inst: BipartiteInstance) -> Optional[List[int]]:
    """Brute force: edge indices of a consistent perfect matching, or None."""
    if inst.left != inst.right:
        return None
    by_left: Dict[int, List[int]] = {i: [] for i in range(inst.left)}
    for idx, (i, _) in enumerate(inst.edges):
        by_left[i].append(idx)
    chosen: List[int] = []
    used_right = set()

    def place(i: int) -> bool:
        if i == inst.left:
            return True
        for idx in by_left[i]:
            j = inst.edges[idx][1]
            if j in used_right or not is_consistent(inst, chosen + [idx]):
                continue
            chosen.append(idx)
            used_right.add(j)
            if place(i + 1):
                return True
            chosen.pop()
            used_right.discard(j)
        return False

    return list(chosen) if place(0) else None


def covering_matching(inst: BipartiteInstance) -> Optional[List[int]]:
    """Brute force: edge indices of a matching covering every left vertex, partitions ignored."""
    by_left: Dict[int, List[int]] = {i: [] for i in range(inst.left)}
    for idx, (i, _) in enumerate(inst.edges):
        by_left[i].append(idx)
    chosen: List[int] = []
    used_right = set()

    def place(i: int) -> bool:
        if i == inst.left:
            return True
        for idx in by_left[i]:
            j = inst.edges[idx][1]
            if j in used_right:
                continue
            chosen.append(idx)
            used_right.add(j)
            if place(i + 1):
                return True
            chosen.pop()
            used_right.discard(j)
        return False

    return list(chosen) if place(0) else None


def has_consistent_perfect_matching(inst: BipartiteInstance) -> bool:
    return consistent_perfect_matching(inst) is not None


# ----- Host construction -----

class _Gadgets(BaseModel):
    """Ids of the two-out-stars host parts."""

    center_of_edge: List[int]
    f_vertices: List[int]
    cases: List[Tuple[int, int, List[int], List[int], Optional[int]]]  # (A, B, edge idx, F ids, v')
    n: int


def _base_host(inst: BipartiteInstance) -> Tuple[List[Arc], Dict[int, str], _Gadgets]:
    inst.check()
    if not inst.degree_ok():
        raise BadPartition("The bipartite graph must have maximum degree three")
    left, right = inst.left, inst.right
    arcs: List[Arc] = [(i, left + j) for i, j in inst.edges]
    roles: Dict[int, str] = {i: "left" for i in range(left)}
    roles.update({left + j: "right" for j in range(right)})
    nxt = left + right
    centers = []
    for i, j in inst.edges:
        c = nxt
        nxt += 1
        centers.append(c)
        roles[c] = "c(e)"
        arcs.extend([(c, i), (c, left + j)])

    f_vertices: List[int] = []
    cases = []
    for (a, b), idxs in sorted(inst.edges_between().items()):
        cs = [centers[x] for x in idxs]
        if len(idxs) <= 1:
            continue
        if len(idxs) == 2:
            v, spare = nxt, nxt + 1
            nxt += 2
            arcs.extend([(v, cs[0]), (v, cs[1]), (v, spare)])
            fs = [v]
        elif len(idxs) == 3:
            v, spare = nxt, None
            nxt += 1
            arcs.extend((v, c) for c in cs)
            fs = [v]
        else:
            v1, v2, spare = nxt, nxt + 1, nxt + 2
            nxt += 3
            for v in (v1, v2):
                arcs.extend((v, c) for c in cs)
                arcs.append((v, spare))
            fs = [v1, v2]
        for v in fs:
            roles[v] = "F"
        if spare is not None:
            roles[spare] = "spare"
        f_vertices.extend(fs)
        cases.append((a, b, list(idxs), fs, spare))
    return arcs, roles, _Gadgets(center_of_edge=centers, f_vertices=f_vertices, cases=cases, n=nxt)


def two_out_stars(count: int) -> StarsPathsPattern:
    return StarsPathsPattern(stars=[Star(out_leaves=2) for _ in range(count)])


def big_star_pattern(count: int) -> StarsPathsPattern:
    """A count-out-star whose leaves are the centers of count 2-out-stars."""
    stars = [Star()] + [Star(out_leaves=2) for _ in range(count)]
    paths = [PatternPath(source=0, target=i, vertex_count=2) for i in range(1, count + 1)]
    return StarsPathsPattern(stars=stars, paths=paths)


def gen_matching_to_stars(inst: BipartiteInstance) -> ReductionOutput:
    """
    Host DAG with |V1| + k' disjoint 2-out-stars iff a consistent perfect matching exists.

    Raises:
        BadPartition: malformed partitions or degree above three
    """
    arcs, roles, gadgets = _base_host(inst)
    k_extra = sum(len(fs) for _, _, _, fs, _ in gadgets.cases)
    host = from_arc_list(gadgets.n, arcs)
    return ReductionOutput(host=host, target=two_out_stars(inst.left + k_extra), expected_dtw_bound=0,
                           roles=roles, params={"k_prime": k_extra, "stars": inst.left + k_extra})


def gen_matching_to_stars_plus_bigstar(inst: BipartiteInstance) -> ReductionOutput:
    """Two-out-stars host plus a vertex u pointing at every c(e) and every F vertex."""
    arcs, roles, gadgets = _base_host(inst)
    k_extra = sum(len(fs) for _, _, _, fs, _ in gadgets.cases)
    u = gadgets.n
    roles[u] = "big-center"
    arcs.extend((u, c) for c in gadgets.center_of_edge + gadgets.f_vertices)
    count = inst.left + k_extra
    host = from_arc_list(u + 1, arcs)
    return ReductionOutput(host=host, target=big_star_pattern(count), expected_dtw_bound=0,
                           roles=roles, params={"k_prime": k_extra, "stars": count, "big_center": u})


def matching_embedding(inst: BipartiteInstance, matching: Sequence[int],
                       out: ReductionOutput) -> Embedding:
    """
    Certificate stars for a consistent perfect matching, in the target's star order.

    Works for both gen_matching_to_stars and the big-star variant.
    """
    _, _, gadgets = _base_host(inst)
    centers = gadgets.center_of_edge
    chosen = set(matching)
    stars: List[Tuple[int, List[int]]] = []
    for idx in sorted(chosen):
        i, j = inst.edges[idx]
        stars.append((centers[idx], [i, inst.left + j]))
    for _, _, idxs, fs, spare in gadgets.cases:
        free = [centers[x] for x in idxs if x not in chosen]
        if len(fs) == 1 and spare is not None:
            stars.append((fs[0], [free[0], spare]))
        elif len(fs) == 1:
            stars.append((fs[0], free[:2]))
        else:
            stars.append((fs[0], free[:2]))
            stars.append((fs[1], [free[2], spare]))
    if isinstance(out.target, StarsPathsPattern) and out.target.r > 0:
        u = out.params["big_center"]
        return Embedding(star_centers=[u] + [c for c, _ in stars],
                         star_leaves=[[]] + [sorted(x) for _, x in stars],
                         path_vertices=[[u, c] for c, _ in stars])
    return Embedding(star_centers=[c for c, _ in stars], star_leaves=[sorted(x) for _, x in stars])


def gen_caterpillar(inst: BipartiteInstance) -> ReductionOutput:
    """
    Two-out-stars host plus a subdivided transitive tournament on the c(e) and a hub r.

    Every c(e) points at r and r points at every subdivision vertex, so all
    cycles pass through r. The target is a directed spine x_1..x_l, r' with
    l = 2|V1| - 1, two out-leaves on every odd x_i and every remaining
    subdivision vertex as an out-leaf of r'. The spine alternates c(e) and
    subdivision vertices, so the branching x_i are |V1| centers whose
    endpoints are pairwise distinct: a copy exists iff some matching covers
    V1. The target has no consistency gadgets, so partitions with parts of
    size two are not enforced by this construction.

    r also gets private sink leaves until r' needs more out-leaves than any
    other vertex has out-neighbors, which pins r' to r.

    Raises:
        BadPartition: malformed partitions or degree above three
        TooFewEdges: m <= |V1|
    """
    m = len(inst.edges)
    if m <= inst.left:
        raise TooFewEdges(f"Need more than {inst.left} edges, got {m}")
    arcs, roles, gadgets = _base_host(inst)
    nxt = gadgets.n
    centers = gadgets.center_of_edge
    subdivisions = []
    for a, b in combinations(range(m), 2):
        x = nxt
        nxt += 1
        roles[x] = "U"
        subdivisions.append(x)
        arcs.extend([(centers[a], x), (x, centers[b])])
    r = nxt
    nxt += 1
    roles[r] = "r"
    arcs.extend((c, r) for c in centers)
    arcs.extend((r, x) for x in subdivisions)

    spine = 2 * inst.left - 1
    hub_leaves = len(subdivisions) - (inst.left - 1)
    # c(e) has at most m + 2 out-neighbors, F gadgets at most 5
    padding = max(0, max(m + 3, 6) - hub_leaves)
    for _ in range(padding):
        roles[nxt] = "pad"
        arcs.append((r, nxt))
        nxt += 1
    host = from_arc_list(nxt, arcs)

    stars = [Star(out_leaves=2) if i % 2 == 0 else Star() for i in range(spine)]
    stars.append(Star(out_leaves=hub_leaves + padding))
    paths = [PatternPath(source=i, target=i + 1, vertex_count=2) for i in range(spine)]
    target = StarsPathsPattern(stars=stars, paths=paths)
    return ReductionOutput(host=host, target=target, expected_dtw_bound=1, roles=roles,
                           params={"hub": r, "spine": spine, "m": m, "padding": padding})


def caterpillar_embedding(inst: BipartiteInstance, matching: Sequence[int], out: ReductionOutput) -> Embedding:
    """
    Certificate caterpillar for a matching (edge indices) covering V1.

    Raises:
        ValueError: matching does not cover V1 with pairwise disjoint edges
    """
    chosen = sorted(set(matching))
    ends = [inst.edges[x] for x in chosen]
    if len({i for i, _ in ends}) != inst.left or len({j for _, j in ends}) != len(ends) or len(ends) != inst.left:
        raise ValueError("Expected one edge per left vertex with distinct right ends")
    host = out.host
    centers = out.vertices_with_role("c(e)")
    spine: List[int] = []
    leaves: List[List[int]] = []
    for pos, x in enumerate(chosen):
        i, j = inst.edges[x]
        spine.append(centers[x])
        leaves.append([i, inst.left + j])
        if pos + 1 < len(chosen):
            following = centers[chosen[pos + 1]]
            spine.append(next(u for u in sorted(host.out_neighbors(centers[x]))
                              if out.roles.get(u) == "U" and host.has_arc(u, following)))
            leaves.append([])
    hub = out.params["hub"]
    taken = set(spine)
    spine.append(hub)
    leaves.append(sorted(u for u in host.out_neighbors(hub) if u not in taken))
    return Embedding(star_centers=spine, star_leaves=leaves,
                     path_vertices=[[spine[p], spine[p + 1]] for p in range(len(spine) - 1)])

"""
SADDP: disjoint paths with prescribed sizes that use few vertices of given avoid sets.

This module holds the instance/solution types, the independent solution
validator, the exhaustive router shared by the oracle and by base
itineraries, and oracle_saddp itself.
"""

from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import SADDP_ORACLE_MAX_VERTICES
from ..errors import TooLarge
from ..graph.digraph import Digraph

# (source, target, vertex count)
Triple = Tuple[int, int, int]


class Request(BaseModel):
    """Ordered terminal pair with the number of vertices its path must have."""

    model_config = ConfigDict(frozen=True)

    source: int = Field(ge=0)
    target: int = Field(ge=0)
    size: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_size(self) -> "Request":
        if self.source == self.target and self.size < 3:
            raise ValueError("A request from a vertex to itself needs a cycle of at least 3 vertices")
        if self.source != self.target and self.size < 2:
            raise ValueError("A path between distinct terminals has at least 2 vertices")
        return self

    def triple(self) -> Triple:
        return self.source, self.target, self.size


class SaddpInstance(BaseModel):
    """Digraph, requests, avoid sets X_j and budgets x_j."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    d: Digraph
    requests: List[Request] = Field(default_factory=list)
    avoid_sets: List[List[int]] = Field(default_factory=list)
    budgets: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_ids(self) -> "SaddpInstance":
        if len(self.avoid_sets) != len(self.budgets):
            raise ValueError("One budget per avoid set is required")
        if any(b < 0 for b in self.budgets):
            raise ValueError("Budgets must be non-negative")
        for req in self.requests:
            if req.source >= self.d.n or req.target >= self.d.n:
                raise ValueError(f"Request ({req.source}, {req.target}) leaves the digraph")
        for x in self.avoid_sets:
            if any(not 0 <= v < self.d.n for v in x):
                raise ValueError("Avoid set has a vertex outside the digraph")
        return self

    def triples(self) -> List[Triple]:
        return [r.triple() for r in self.requests]

    def frozen_avoid_sets(self) -> List[FrozenSet[int]]:
        return [frozenset(x) for x in self.avoid_sets]


class PathSolution(BaseModel):
    """One vertex sequence per request; closed requests repeat the terminal at the end."""

    paths: List[List[int]] = Field(default_factory=list)


def validate_solution(inst: SaddpInstance, sol: PathSolution) -> List[str]:
    """
    Check a PathSolution independently of the solvers.

    Returns:
        List of problems, empty when the solution is valid
    """
    problems: List[str] = []
    triples = inst.triples()
    if len(sol.paths) != len(triples):
        return [f"Expected {len(triples)} paths, got {len(sol.paths)}"]
    terminals = {v for s, t, _ in triples for v in (s, t)}
    owner: Dict[int, int] = {}
    union: Set[int] = set()
    for i, ((s, t, p), seq) in enumerate(zip(triples, sol.paths)):
        closed = s == t
        expected = p + 1 if closed else p
        if len(seq) != expected:
            problems.append(f"Path {i} has {len(seq)} entries, expected {expected}")
            continue
        if seq[0] != s or seq[-1] != t:
            problems.append(f"Path {i} does not run from {s} to {t}")
        body = seq[:-1] if closed else seq
        if len(set(body)) != len(body):
            problems.append(f"Path {i} repeats a vertex")
        for u, v in zip(seq, seq[1:]):
            if not inst.d.has_arc(u, v):
                problems.append(f"Path {i} uses missing arc {u}->{v}")
        for v in seq[1:-1]:
            if v in terminals:
                problems.append(f"Path {i} passes through terminal {v}")
            if v in owner and owner[v] != i:
                problems.append(f"Vertex {v} is interior to paths {owner[v]} and {i}")
            owner[v] = i
        union.update(seq)
    for j, (x, b) in enumerate(zip(inst.frozen_avoid_sets(), inst.budgets)):
        if len(union & x) > b:
            problems.append(f"Avoid set {j} used {len(union & x)} times, budget {b}")
    return problems


# ----- Exhaustive router -----

def route(d: Digraph, allowed: FrozenSet[int], requests: Sequence[Triple],
          avoid_sets: Sequence[FrozenSet[int]], budgets: Sequence[int]) -> Optional[List[List[int]]]:
    """
    Exhaustive search for paths realizing ``requests`` inside ``allowed``.

    Interiors avoid every terminal and every vertex already used; budgets
    count all vertices of the union, terminals included. Requests (v, v, 1)
    are single-vertex paths, (v, v, p >= 3) are cycles through v.

    Returns:
        One vertex list per request (input order), or None
    """
    terminals = {v for s, t, _ in requests for v in (s, t)}
    if not terminals <= allowed:
        return None
    used: Set[int] = set(terminals)
    usage = [len(used & x) for x in avoid_sets]
    if any(u > b for u, b in zip(usage, budgets)):
        return None
    membership: Dict[int, List[int]] = {}
    for j, x in enumerate(avoid_sets):
        for v in x:
            membership.setdefault(v, []).append(j)

    order = sorted(range(len(requests)), key=lambda i: (requests[i][2], i))
    found: List[Optional[List[int]]] = [None] * len(requests)

    def usable(v: int) -> bool:
        if v not in allowed or v in used:
            return False
        return all(usage[j] < budgets[j] for j in membership.get(v, ()))

    def take(v: int) -> None:
        used.add(v)
        for j in membership.get(v, ()):
            usage[j] += 1

    def drop(v: int) -> None:
        used.discard(v)
        for j in membership.get(v, ()):
            usage[j] -= 1

    def place(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        s, t, p = requests[i]
        if s == t and p == 1:
            found[i] = [s]
            return place(pos + 1)
        if s != t and p < 2 or s == t and p < 3:
            return False
        # the path is complete once it holds `last_len` vertices and can step to t
        last_len = p if s == t else p - 1
        path = [s]

        def extend() -> bool:
            last = path[-1]
            if len(path) == last_len:
                if d.has_arc(last, t):
                    found[i] = path + [t]
                    if place(pos + 1):
                        return True
                    found[i] = None
                return False
            for v in sorted(d.out_neighbors(last)):
                if usable(v):
                    take(v)
                    path.append(v)
                    if extend():
                        return True
                    path.pop()
                    drop(v)
            return False

        return extend()

    if not place(0):
        return None
    return [list(p) for p in found]


def oracle_saddp(inst: SaddpInstance, max_vertices: int = SADDP_ORACLE_MAX_VERTICES) -> Optional[PathSolution]:
    """
    Exhaustive backtracking over simple paths; exact ground truth.

    Raises:
        TooLarge: the digraph and the requested path sizes are both above the cap
    """
    total = sum(r.size for r in inst.requests)
    if inst.d.n > max_vertices and total > max_vertices:
        raise TooLarge(f"oracle_saddp handles at most {max_vertices} vertices, got {inst.d.n}")
    paths = route(inst.d, frozenset(inst.d.vertices()), inst.triples(),
                  inst.frozen_avoid_sets(), inst.budgets)
    return PathSolution(paths=paths) if paths is not None else None

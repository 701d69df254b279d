"""
Rooted and unrooted stars-paths subdigraph isomorphism.

solve_rooted sweeps how many vertices of every neighborhood cell the paths
may take, solves the star system for the leftover capacity and asks the
SADDP solver for paths within those budgets.
"""

import logging
from itertools import islice, permutations, product
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict

from ..config import N_JOBS
from ..decomp.arboreal import ArborealDecomposition, dag_decomposition
from ..errors import BadVertexId, NoDecomposition, SolverInvariantError
from ..graph.digraph import Digraph
from ..graph.pattern import Embedding, StarsPathsPattern, validate_embedding
from ..graph.traversal import is_dag
from .saddp_solver import SaddpSolver
from .star_system import (
    LeafAssignment,
    StarSpec,
    StarSystem,
    build_system,
    homogenize,
    is_feasible,
    solve,
)

logger = logging.getLogger(__name__)


class RspsiInstance(BaseModel):
    """Host digraph, rooted pattern and an optional decomposition of the host."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    d: Digraph
    pattern: StarsPathsPattern
    decomposition: Optional[ArborealDecomposition] = None


def resolve_decomposition(d: Digraph, dec: Optional[ArborealDecomposition]) -> ArborealDecomposition:
    """
    Use ``dec`` when given, otherwise the width-0 decomposition of a DAG.

    Raises:
        NoDecomposition: d has a cycle and no decomposition was supplied
    """
    if dec is not None:
        return dec
    if not is_dag(d):
        raise NoDecomposition("Host has a cycle; supply an arboreal decomposition")
    return dag_decomposition(d)


def _maximal_budgets(system: StarSystem, cells: List[FrozenSet[int]]) -> List[Tuple[int, ...]]:
    """
    Pareto-maximal per-cell budgets u with the star system feasible at capacities |X_J| - u_J.

    Feasibility only grows when a budget shrinks, so a vector is maximal
    as soon as no single coordinate can be raised.
    """
    sizes = [len(system.cells[c]) for c in cells]
    cache: Dict[Tuple[int, ...], bool] = {}

    def feasible(u: Tuple[int, ...]) -> bool:
        if u not in cache:
            cache[u] = is_feasible(system.with_cell_slacks(dict(zip(cells, u))))
        return cache[u]

    maximal = []
    for u in product(*(range(s + 1) for s in sizes)):
        if not feasible(u):
            continue
        raised = (u[:j] + (u[j] + 1,) + u[j + 1:] for j in range(len(u)) if u[j] < sizes[j])
        if not any(feasible(v) for v in raised):
            maximal.append(u)
    return maximal


def _assemble(pattern: StarsPathsPattern, roots: Sequence[int], specs: Sequence[StarSpec],
              assignment: LeafAssignment, paths: List[List[int]]) -> Embedding:
    out_leaves: List[List[int]] = [[] for _ in range(pattern.k)]
    in_leaves: List[List[int]] = [[] for _ in range(pattern.k)]
    for spec, leaves in zip(specs, assignment.leaves):
        target = out_leaves if spec.orientation == "out" else in_leaves
        target[spec.pattern_star].extend(leaves)
    return Embedding(star_centers=list(roots),
                     star_leaves=[o + i for o, i in zip(out_leaves, in_leaves)],
                     path_vertices=[list(p) for p in paths])


def _rooted(d: Digraph, pattern: StarsPathsPattern, roots: Sequence[int],
            dec: ArborealDecomposition) -> Optional[Embedding]:
    specs, _ = homogenize(pattern, roots)
    base = build_system(d, specs, reserved=roots)

    if pattern.r == 0:
        assignment = solve(base)
        return _assemble(pattern, roots, specs, assignment, []) if assignment is not None else None

    triples = [(roots[p.source], roots[p.target], p.vertex_count) for p in pattern.paths]
    endpoints = {v for s, t, _ in triples for v in (s, t)}
    idle_roots = sorted(set(roots) - endpoints)
    cells = [c for c, _ in base.sorted_cells()]
    avoid_sets = [sorted(base.cells[c]) for c in cells] + [idle_roots]

    budgets = _maximal_budgets(base, cells)
    if not budgets:
        return None
    solver = SaddpSolver(d, avoid_sets, dec)
    for u in budgets:
        paths = solver.solve(triples, list(u) + [0])
        if paths is None:
            continue
        on_paths = {v for p in paths for v in p}
        assignment = solve(build_system(d, specs, reserved=set(roots) | on_paths))
        if assignment is None:
            raise SolverInvariantError(f"Star system infeasible after routing with budgets {u}")
        return _assemble(pattern, roots, specs, assignment, paths)
    return None


def solve_rooted(inst: RspsiInstance) -> Optional[Embedding]:
    """
    Find the pattern with center i placed on roots[i].

    Returns:
        Embedding, or None when the rooted pattern does not occur

    Raises:
        ValueError: the pattern carries no roots
        BadVertexId: a root is not a host vertex
        NoDecomposition: the host has a cycle and no decomposition was supplied
    """
    roots = inst.pattern.roots
    if roots is None:
        raise ValueError("solve_rooted needs a pattern with roots")
    for v in roots:
        if not 0 <= v < inst.d.n:
            raise BadVertexId(f"Root {v} is not a vertex of the host")
    dec = resolve_decomposition(inst.d, inst.decomposition)
    emb = _rooted(inst.d, inst.pattern, roots, dec)
    if emb is not None:
        problems = validate_embedding(inst.d, inst.pattern, emb)
        if problems:
            raise SolverInvariantError("; ".join(problems))
    return emb


def _degree_ok(d: Digraph, pattern: StarsPathsPattern, roots: Sequence[int]) -> bool:
    """Cheap necessary condition: every placed center has enough out- and in-neighbors."""
    need_out = [s.out_leaves for s in pattern.stars]
    need_in = [s.in_leaves for s in pattern.stars]
    for p in pattern.paths:
        need_out[p.source] += 1
        need_in[p.target] += 1
    for i, v in enumerate(roots):
        if len(d.out_neighbors(v) - {v}) < need_out[i] or len(d.in_neighbors(v) - {v}) < need_in[i]:
            return False
    return True


def placements(d: Digraph, pattern: StarsPathsPattern) -> Iterator[Tuple[int, ...]]:
    """Injective center placements in lexicographic order that pass the degree filter."""
    for roots in permutations(range(d.n), pattern.k):
        if _degree_ok(d, pattern, roots):
            yield roots


def _try_placement(d: Digraph, pattern: StarsPathsPattern, roots: Tuple[int, ...],
                   dec: ArborealDecomposition) -> Optional[Embedding]:
    return _rooted(d, pattern.with_roots(list(roots)), roots, dec)


def solve_unrooted(d: Digraph, pattern: StarsPathsPattern,
                   dec: Optional[ArborealDecomposition] = None,
                   n_jobs: int = N_JOBS) -> Optional[Embedding]:
    """
    Try every injective center placement and return the first hit in lexicographic order.

    Placements are evaluated in batches with joblib; the earliest success
    in a batch wins, so the answer does not depend on ``n_jobs``.

    Raises:
        NoDecomposition: the host has a cycle and no decomposition was supplied
    """
    dec = resolve_decomposition(d, dec)
    unrooted = pattern.with_roots(None)
    batch = max(1, n_jobs) * 4
    candidates = placements(d, unrooted)
    while True:
        chunk = list(islice(candidates, batch))
        if not chunk:
            return None
        if n_jobs == 1:
            results = (_try_placement(d, unrooted, roots, dec) for roots in chunk)
        else:
            results = Parallel(n_jobs=n_jobs)(
                delayed(_try_placement)(d, unrooted, roots, dec) for roots in chunk)
        for roots, emb in zip(chunk, results):
            if emb is not None:
                logger.debug("solve_unrooted: centers placed on %s", roots)
                problems = validate_embedding(d, unrooted, emb)
                if problems:
                    raise SolverInvariantError("; ".join(problems))
                return emb

"""
SADDP solver driven by an arboreal decomposition.

The decomposition tree is walked bottom-up: leaves become exhaustive
itineraries, the children of a node are chained with combine_sequential in
the order of the arcs between them, and the vertices of the node's bag and
guards are absorbed a few at a time with combine_small.
"""

import logging
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..decomp.arboreal import ArborealDecomposition, validate
from ..errors import GuardViolation, InvalidDecomposition, NotAPartition, SolverInvariantError
from ..graph.digraph import Digraph, from_arc_list
from ..graph.traversal import condensation_order, strong_components
from .itinerary import (
    BaseItinerary,
    Itinerary,
    RoutingContext,
    base_itinerary,
    combine_sequential,
    combine_small,
)
from .saddp import PathSolution, SaddpInstance, Triple, validate_solution

logger = logging.getLogger(__name__)


class SaddpSolver:
    """
    Itinerary tree for one digraph, one decomposition and one family of avoid sets.

    The tree (and every memo table in it) is reused across solve() calls, so
    sweeping budgets or request lists over the same avoid sets stays cheap.

    Args:
        d: host digraph
        avoid_sets: the sets X_j
        dec: arboreal decomposition of d
    """

    def __init__(self, d: Digraph, avoid_sets: Sequence[Iterable[int]], dec: ArborealDecomposition):
        try:
            _, self.width = validate(d, dec)
        except (GuardViolation, NotAPartition) as exc:
            raise InvalidDecomposition(str(exc)) from exc
        self.d = d
        self.dec = dec
        self.ctx = RoutingContext(d, avoid_sets)
        self.chunk = self.width + 1
        self.merged_groups = 0
        self._root: Optional[Itinerary] = None

    @property
    def root_itinerary(self) -> Itinerary:
        if self._root is None:
            self._root = self._itinerary_for(self.dec.root, frozenset())
        return self._root

    def _itinerary_for(self, node: int, excluded: FrozenSet[int]) -> Itinerary:
        """Itinerary for the vertices of the subtree at ``node`` minus ``excluded``."""
        dec = self.dec
        universe = dec.subtree_vertices(node) - excluded
        children = dec.children(node)
        if not children:
            return base_itinerary(self.ctx, universe, self.width)

        cut = excluded | frozenset(dec.node_width_set(node))
        parts: List[Tuple[FrozenSet[int], Itinerary]] = []
        for child in children:
            trimmed = frozenset(dec.subtree_vertices(child) - cut)
            if trimmed:
                parts.append((trimmed, self._itinerary_for(child, cut)))

        acc = self._chain_children(parts)
        covered = acc.vertices if acc is not None else frozenset()
        rest = sorted(universe - covered)
        if acc is None:
            return BaseItinerary(self.ctx, rest)
        for start in range(0, len(rest), self.chunk):
            acc = combine_small(acc, rest[start:start + self.chunk], self.width)
        return acc

    def _chain_children(self, parts: List[Tuple[FrozenSet[int], Itinerary]]) -> Optional[Itinerary]:
        if not parts:
            return None
        owner: Dict[int, int] = {}
        for i, (verts, _) in enumerate(parts):
            for v in verts:
                owner[v] = i
        links = set()
        for u, v in self.d.arcs:
            a, b = owner.get(u), owner.get(v)
            if a is not None and b is not None and a != b:
                links.add((a, b))
        quotient = from_arc_list(len(parts), sorted(links))
        groups = strong_components(quotient)

        itineraries: List[Itinerary] = []
        for group in groups:
            if len(group) == 1:
                itineraries.append(parts[next(iter(group))][1])
                continue
            # the arc relation between trimmed children should be acyclic
            merged = frozenset().union(*(parts[i][0] for i in group))
            logger.warning("Merging %d child subtrees into one exhaustive group (%d vertices)",
                           len(group), len(merged))
            self.merged_groups += 1
            itineraries.append(BaseItinerary(self.ctx, merged))

        order = condensation_order(quotient, groups)
        acc = itineraries[order[0]]
        for i in order[1:]:
            acc = combine_sequential(acc, itineraries[i])
        return acc

    def _close(self, triples: Sequence[Triple]) -> Iterable[List[Triple]]:
        """Rewrite every closed request (s, s, p) as (s, u, p) for a guessed predecessor u; the arc u->s closes it."""
        closed = [i for i, (s, t, _) in enumerate(triples) if s == t]
        if not closed:
            yield list(triples)
            return
        terminals = {v for s, t, _ in triples for v in (s, t)}
        options = [sorted(self.d.in_neighbors(triples[i][0]) - terminals) for i in closed]
        for guess in product(*options):
            if len(set(guess)) != len(guess):
                continue
            rewritten = list(triples)
            for i, u in zip(closed, guess):
                s, _, p = triples[i]
                rewritten[i] = (s, u, p)
            yield rewritten

    def solve(self, triples: Sequence[Triple], budgets: Sequence[int]) -> Optional[List[List[int]]]:
        """
        Route the requests within the budgets.

        Returns:
            One vertex list per request (closed ones end with their terminal), or None
        """
        if not triples:
            return []
        if len(budgets) != len(self.ctx.avoid_sets):
            raise ValueError(f"Expected {len(self.ctx.avoid_sets)} budgets, got {len(budgets)}")
        root = self.root_itinerary
        for rewritten in self._close(triples):
            paths = root.query(rewritten, budgets)
            if paths is None:
                continue
            for i, (s, t, _) in enumerate(triples):
                if s == t:
                    paths[i] = paths[i] + [s]
            return paths
        return None


def solve_saddp(inst: SaddpInstance, dec: ArborealDecomposition) -> Optional[PathSolution]:
    """
    Solve a SADDP instance with the itinerary dynamic program over ``dec``.

    Raises:
        InvalidDecomposition: dec is not an arboreal decomposition of inst.d
        SolverInvariantError: a witness failed the independent validator
    """
    solver = SaddpSolver(inst.d, inst.avoid_sets, dec)
    paths = solver.solve(inst.triples(), inst.budgets)
    logger.debug("solve_saddp: %d itinerary entries evaluated", solver.ctx.evaluations)
    if paths is None:
        return None
    solution = PathSolution(paths=paths)
    problems = validate_solution(inst, solution)
    if problems:
        raise SolverInvariantError("; ".join(problems))
    return solution

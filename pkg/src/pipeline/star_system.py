"""
Star System: placing star leaves around prescribed centers.

The leaf counts t_i(J) per neighborhood cell are found by a small integer
program (scipy's HiGHS-backed milp) after a Hall-condition pre-check.
"""

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import Bounds, LinearConstraint, milp

from ..graph.digraph import Digraph
from ..graph.pattern import StarsPathsPattern

Orientation = Literal["out", "in"]
Cell = FrozenSet[int]


class StarSpec(BaseModel):
    """A homogeneous star pinned to a host vertex."""

    model_config = ConfigDict(frozen=True)

    center_in_host: int = Field(ge=0)
    orientation: Orientation
    leaf_count: int = Field(ge=0)
    pattern_star: int = Field(0, ge=0)


class StarSystem(BaseModel):
    """
    Integer system for a list of homogeneous stars.

    ``cells`` maps each non-empty index set J to X_J, the vertices lying in
    exactly the neighborhoods N_j with j in J. ``slacks`` are per-star
    (unused usable neighbors), ``cell_slacks`` reduce a cell's capacity.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    specs: List[StarSpec]
    neighborhoods: List[FrozenSet[int]]
    cells: Dict[FrozenSet[int], FrozenSet[int]]
    slacks: List[int]
    cell_slacks: Dict[FrozenSet[int], int] = Field(default_factory=dict)

    def sorted_cells(self) -> List[Tuple[Cell, FrozenSet[int]]]:
        return sorted(self.cells.items(), key=lambda item: (sorted(item[0]), sorted(item[1])))

    def capacity(self, cell: Cell) -> int:
        return len(self.cells[cell]) - self.cell_slacks.get(cell, 0)

    def with_cell_slacks(self, cell_slacks: Dict[FrozenSet[int], int]) -> "StarSystem":
        return StarSystem(specs=self.specs, neighborhoods=self.neighborhoods, cells=self.cells,
                          slacks=self.slacks, cell_slacks=dict(cell_slacks))


class LeafAssignment(BaseModel):
    """Leaves chosen for every spec."""

    leaves: List[List[int]]


def homogenize(pattern: StarsPathsPattern, f: Sequence[int]) -> Tuple[List[StarSpec], Dict[int, List[int]]]:
    """
    Split every star into homogeneous stars pinned to its host vertex.

    Args:
        pattern: stars-paths pattern
        f: host vertex of each center

    Returns:
        (specs, multiplicity) where multiplicity maps a host vertex to the
        indices of the specs placed on it
    """
    specs: List[StarSpec] = []
    multiplicity: Dict[int, List[int]] = {}
    for i, star in enumerate(pattern.stars):
        parts: List[Tuple[Orientation, int]] = []
        if star.out_leaves > 0 or star.in_leaves == 0:
            parts.append(("out", star.out_leaves))
        if star.in_leaves > 0:
            parts.append(("in", star.in_leaves))
        for orientation, count in parts:
            multiplicity.setdefault(f[i], []).append(len(specs))
            specs.append(StarSpec(center_in_host=f[i], orientation=orientation,
                                  leaf_count=count, pattern_star=i))
    return specs, multiplicity


def build_system(d: Digraph, specs: Sequence[StarSpec], slacks: Optional[Sequence[int]] = None,
                 reserved: Iterable[int] = ()) -> StarSystem:
    """
    Materialize neighborhoods N_i (minus ``reserved``) and the non-empty cells X_J.

    Raises:
        ValueError: slack vector length differs from the number of specs
    """
    slacks = list(slacks) if slacks is not None else [0] * len(specs)
    if len(slacks) != len(specs):
        raise ValueError(f"Expected {len(specs)} slacks, got {len(slacks)}")
    blocked = set(reserved)
    neighborhoods: List[FrozenSet[int]] = []
    for spec in specs:
        nbrs = d.out_neighbors(spec.center_in_host) if spec.orientation == "out" \
            else d.in_neighbors(spec.center_in_host)
        neighborhoods.append(frozenset(v for v in nbrs if v not in blocked and v != spec.center_in_host))
    membership: Dict[int, List[int]] = {}
    for i, nbrs in enumerate(neighborhoods):
        for v in nbrs:
            membership.setdefault(v, []).append(i)
    cells: Dict[FrozenSet[int], set] = {}
    for v, owners in membership.items():
        cells.setdefault(frozenset(owners), set()).add(v)
    return StarSystem(specs=list(specs), neighborhoods=neighborhoods,
                      cells={j: frozenset(x) for j, x in cells.items()}, slacks=slacks)


def hall_feasible(system: StarSystem) -> bool:
    """
    Hall's condition for the leaf transportation problem.

    Exact when every per-star slack is zero; a necessary condition otherwise.
    """
    k = len(system.specs)
    demand = [s.leaf_count for s in system.specs]
    for cell in system.cells:
        if system.capacity(cell) < 0:
            return False
    for size in range(1, k + 1):
        for group in combinations(range(k), size):
            members = set(group)
            need = sum(demand[i] for i in group)
            if need == 0:
                continue
            supply = sum(system.capacity(c) for c in system.cells if c & members)
            if need > supply:
                return False
    return True


def _solve_counts(system: StarSystem) -> Optional[Dict[Tuple[int, FrozenSet[int]], int]]:
    """Find integer per-cell leaf counts meeting demand, capacity and slack, or return None."""
    k = len(system.specs)
    cells = [c for c, _ in system.sorted_cells()]
    variables = [(i, c) for c in cells for i in sorted(c)]
    demand = [s.leaf_count for s in system.specs]
    if not variables:
        ok = all(dm == 0 for dm in demand) and all(
            len(system.neighborhoods[i]) - system.slacks[i] >= 0 for i in range(k))
        return {} if ok else None
    if any(system.capacity(c) < 0 for c in cells):
        return None
    if any(len(system.neighborhoods[i]) < system.slacks[i] for i in range(k)):
        return None

    index = {var: j for j, var in enumerate(variables)}
    size = len(variables)
    rows, lower, upper = [], [], []
    # every star receives exactly its leaves
    for i in range(k):
        row = np.zeros(size)
        for c in cells:
            if i in c:
                row[index[(i, c)]] = 1
        rows.append(row)
        lower.append(demand[i])
        upper.append(demand[i])
    # a cell is not overused
    for c in cells:
        row = np.zeros(size)
        for i in c:
            row[index[(i, c)]] = 1
        rows.append(row)
        lower.append(0)
        upper.append(system.capacity(c))
    # each star keeps `slack` usable neighbors free
    for i in range(k):
        row = np.zeros(size)
        for c in cells:
            if i in c:
                for a in c:
                    row[index[(a, c)]] = 1
        rows.append(row)
        lower.append(0)
        upper.append(len(system.neighborhoods[i]) - system.slacks[i])

    constraints = LinearConstraint(np.vstack(rows), np.array(lower, dtype=float), np.array(upper, dtype=float))
    caps = np.array([len(system.cells[c]) for _, c in variables], dtype=float)
    result = milp(c=np.zeros(size), constraints=constraints, integrality=np.ones(size),
                  bounds=Bounds(np.zeros(size), caps))
    if result.status != 0 or result.x is None:
        return None
    values = np.rint(result.x).astype(int)
    return {var: int(values[j]) for var, j in index.items()}


def solve(system: StarSystem) -> Optional[LeafAssignment]:
    """
    Solve the star system and pick concrete leaves (lowest ids first per cell).

    Returns:
        LeafAssignment, or None when the counts are infeasible
    """
    if not hall_feasible(system):
        return None
    counts = _solve_counts(system)
    if counts is None:
        return None
    leaves: List[List[int]] = [[] for _ in system.specs]
    for cell, vertices in system.sorted_cells():
        pool = sorted(vertices)
        pos = 0
        for i in sorted(cell):
            take = counts.get((i, cell), 0)
            leaves[i].extend(pool[pos:pos + take])
            pos += take
    return LeafAssignment(leaves=[sorted(x) for x in leaves])


def is_feasible(system: StarSystem) -> bool:
    """Feasibility only; skips the integer program when Hall's condition is exact."""
    if not hall_feasible(system):
        return False
    if all(s == 0 for s in system.slacks):
        return True
    return _solve_counts(system) is not None


def check_assignment(system: StarSystem, assignment: LeafAssignment) -> List[str]:
    """Check the three LeafAssignment invariants; returns the list of problems."""
    problems: List[str] = []
    taken: set = set()
    for i, (spec, leaves) in enumerate(zip(system.specs, assignment.leaves)):
        if len(leaves) != spec.leaf_count:
            problems.append(f"Spec {i} has {len(leaves)} leaves, expected {spec.leaf_count}")
        if not set(leaves) <= system.neighborhoods[i]:
            problems.append(f"Spec {i} uses vertices outside its neighborhood")
        if taken & set(leaves):
            problems.append(f"Spec {i} shares leaves with another spec")
        taken |= set(leaves)
    for i, nbrs in enumerate(system.neighborhoods):
        if len(nbrs - taken) < system.slacks[i]:
            problems.append(f"Spec {i} keeps fewer than {system.slacks[i]} neighbors free")
    return problems

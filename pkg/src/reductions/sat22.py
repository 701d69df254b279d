"""
3-SAT-(2,2) to two subdivided out-stars.

Host ids: s, then per variable i the block v_i, x1_i, x2_i, nx1_i, nx2_i,
then c, then one y_j per clause.
"""

from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, model_validator

from ..errors import NotTwoTwo
from ..graph.digraph import Arc, from_arc_list
from ..graph.pattern import Embedding, PatternPath, Star, StarsPathsPattern
from .base import ReductionOutput


class Formula(BaseModel):
    """CNF over variables 1..variables; literals are signed ints (DIMACS style)."""

    variables: int = Field(ge=1)
    clauses: List[List[int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_literals(self) -> "Formula":
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.variables:
                    raise ValueError(f"Literal {lit} out of range")
        return self

    def check_two_two(self, widths: Sequence[int] = (3,)) -> None:
        """
        ``widths`` lists the allowed clause sizes; 3-SAT-(2,2) proper is (3,).

        Raises:
            NotTwoTwo: a clause is not ``widths`` distinct variables or a literal does not occur exactly twice
        """
        for clause in self.clauses:
            if len(clause) not in widths or len({abs(x) for x in clause}) != len(clause):
                raise NotTwoTwo(f"Clause {clause} is not {' or '.join(map(str, widths))} distinct variables")
        counts = self.occurrences()
        for v in range(1, self.variables + 1):
            for lit in (v, -v):
                if len(counts.get(lit, [])) != 2:
                    raise NotTwoTwo(f"Literal {lit} occurs {len(counts.get(lit, []))} times")

    def occurrences(self) -> Dict[int, List[int]]:
        """Clause indices in which each literal occurs, in order."""
        occ: Dict[int, List[int]] = {}
        for j, clause in enumerate(self.clauses):
            for lit in clause:
                occ.setdefault(lit, []).append(j)
        return occ

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(x) - 1] == (x > 0) for x in clause) for clause in self.clauses)


def satisfying_assignment(formula: Formula) -> Optional[List[bool]]:
    """Brute force over all assignments (variable 1 first)."""
    for bits in product([False, True], repeat=formula.variables):
        if formula.satisfied_by(bits):
            return list(bits)
    return None


def is_satisfiable(formula: Formula) -> bool:
    return satisfying_assignment(formula) is not None


def _layout(formula: Formula) -> Tuple[int, Dict[int, Tuple[int, int, int, int, int]], int, List[int]]:
    n, m = formula.variables, len(formula.clauses)
    s = 0
    blocks = {i: tuple(range(1 + 5 * (i - 1), 6 + 5 * (i - 1))) for i in range(1, n + 1)}
    c = 1 + 5 * n
    ys = list(range(c + 1, c + 1 + m))
    return s, blocks, c, ys


def subdivided_stars_target(n: int, m: int) -> StarsPathsPattern:
    """
    2-subdivided n-out-star plus a disjoint 1-subdivided m-out-star.

    Star 0 is the first center, stars 1..n the last inner arm vertices,
    star n+1 the second center and n+2..n+m+1 its arm vertices.
    """
    stars = [Star()] + [Star(out_leaves=1) for _ in range(n)] + [Star()] + [Star(out_leaves=1) for _ in range(m)]
    paths = [PatternPath(source=0, target=i, vertex_count=3) for i in range(1, n + 1)]
    paths += [PatternPath(source=n + 1, target=n + 1 + j, vertex_count=2) for j in range(1, m + 1)]
    return StarsPathsPattern(stars=stars, paths=paths)


def gen_sat22(formula: Formula, widths: Sequence[int] = (3,)) -> ReductionOutput:
    """
    Host DAG containing the two subdivided stars iff the formula is satisfiable.

    Clauses of two variables (``widths=(2, 3)``) build the same gadgets with
    fewer clause arcs.

    Raises:
        NotTwoTwo: a clause size is outside ``widths`` or a literal does not occur exactly twice
    """
    formula.check_two_two(widths)
    s, blocks, c, ys = _layout(formula)
    arcs: List[Arc] = []
    roles: Dict[int, str] = {s: "selector", c: "verifier"}
    occ = formula.occurrences()
    for i, (v, x1, x2, nx1, nx2) in blocks.items():
        arcs.extend([(s, v), (v, x1), (x1, x2), (v, nx1), (nx1, nx2)])
        roles.update({v: "variable", x1: "literal", x2: "literal", nx1: "literal", nx2: "literal"})
        for lit, (first, second) in ((i, (x1, x2)), (-i, (nx1, nx2))):
            j1, j2 = occ[lit]
            arcs.extend([(ys[j1], first), (ys[j2], second)])
    for y in ys:
        arcs.append((c, y))
        roles[y] = "clause"
    host = from_arc_list(ys[-1] + 1 if ys else c + 1, arcs)
    target = subdivided_stars_target(formula.variables, len(formula.clauses))
    return ReductionOutput(host=host, target=target, expected_dtw_bound=0, roles=roles,
                           params={"selector": s, "verifier": c})


def assignment_embedding(formula: Formula, assignment: Sequence[bool], out: ReductionOutput) -> Embedding:
    """
    Certificate embedding for a satisfying assignment.

    A true variable routes its selector arm through the negative literal
    vertices, leaving both positive ones free for the clauses (and vice versa).

    Raises:
        ValueError: the assignment does not satisfy the formula
    """
    if not formula.satisfied_by(assignment):
        raise ValueError("Assignment does not satisfy the formula")
    s, blocks, c, ys = _layout(formula)
    occ = formula.occurrences()
    arm_ends: List[int] = []
    arm_leaves: List[List[int]] = []
    arm_paths: List[List[int]] = []
    for i, (v, x1, x2, nx1, nx2) in blocks.items():
        first, second = (nx1, nx2) if assignment[i - 1] else (x1, x2)
        arm_ends.append(first)
        arm_leaves.append([second])
        arm_paths.append([s, v, first])
    clause_leaves: List[List[int]] = []
    for j, clause in enumerate(formula.clauses):
        lit = next(x for x in clause if assignment[abs(x) - 1] == (x > 0))
        v, x1, x2, nx1, nx2 = blocks[abs(lit)]
        pair = (x1, x2) if lit > 0 else (nx1, nx2)
        clause_leaves.append([pair[occ[lit].index(j)]])
    return Embedding(
        star_centers=[s] + arm_ends + [c] + ys,
        star_leaves=[[]] + arm_leaves + [[]] + clause_leaves,
        path_vertices=arm_paths + [[c, y] for y in ys],
    )

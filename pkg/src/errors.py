"""
Exceptions raised across the toolkit
"""

from typing import Optional, Sequence, Tuple


# ----- Construction and precondition errors -----

class DuplicateArc(ValueError):
    """The same directed arc was given twice."""


class LoopForbidden(ValueError):
    """A loop was given to a digraph built without loops."""


class BadVertexId(ValueError):
    """A vertex id is negative or not smaller than the vertex count."""


class ArcNotFound(ValueError):
    """The requested arc is not present in the digraph."""


class HasLoops(ValueError):
    """The operation requires a loop-free digraph."""


class OverlappingSets(ValueError):
    """Two vertex sets that must be disjoint intersect."""


class NotAPartition(ValueError):
    """Decomposition bags do not partition the vertex set."""


class GuardViolation(ValueError):
    """A guard set fails to protect the vertices below its tree arc.

    Args:
        edge: the tree arc (parent, child)
        walk: a walk leaving the guarded set and coming back, avoiding the guard
    """

    def __init__(self, edge: Tuple[int, int], walk: Optional[Sequence[int]]):
        self.edge = edge
        self.walk = list(walk) if walk is not None else None
        super().__init__(f"Guard of tree arc {edge} violated by walk {self.walk}")


class ArcFromBToA(ValueError):
    """combine_sequential was given sets with an arc from the second to the first."""


class BadPairs(ValueError):
    """Edge pairs of the antidirected construction are malformed."""


class BadPartition(ValueError):
    """A bipartite partition is malformed (parts larger than two, overlaps, gaps)."""


class NotTwoTwo(ValueError):
    """The formula is not a 3-SAT-(2,2) formula."""


class TooFewEdges(ValueError):
    """The caterpillar construction needs more edges than left vertices."""


class ParseError(ValueError):
    """A text file could not be parsed.

    Args:
        path: file name (or '<string>')
        line: 1-based line number, 0 when the file as a whole is wrong
        message: what went wrong
    """

    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        self.message = message
        super().__init__(f"{path}:{line}: {message}")


# ----- Capacity and algorithmic errors -----

class PatternTooLarge(RuntimeError):
    """Pattern exceeds the backtracking oracle cap."""


class TooLarge(RuntimeError):
    """Input exceeds the cap of an exhaustive routine."""


class NotADag(RuntimeError):
    """The operation is only defined on acyclic digraphs."""


class NoDecomposition(RuntimeError):
    """A non-DAG host was given without an arboreal decomposition."""


class InvalidDecomposition(RuntimeError):
    """The supplied arboreal decomposition does not validate."""


class SolverInvariantError(RuntimeError):
    """An internal consistency check of a solver failed."""

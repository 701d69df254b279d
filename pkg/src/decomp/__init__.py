"""Arboreal decompositions, guardedness, width search and breakability."""

from .arboreal import (
    ArborealDecomposition,
    DecompositionReport,
    GuardCertificate,
    TreeEdge,
    check_decomposition,
    dag_decomposition,
    is_guarded,
    trivial_decomposition,
    validate,
)
from .breakability import breakability
from .search import dtw_upper_small

__all__ = [
    "ArborealDecomposition", "DecompositionReport", "GuardCertificate", "TreeEdge",
    "check_decomposition", "dag_decomposition", "is_guarded", "trivial_decomposition",
    "validate", "breakability", "dtw_upper_small",
]

"""
Pipeline: end-to-end stars-paths subdigraph search
"""

import time
from typing import Dict, Optional, Tuple

import pandas as pd

from ..config import N_JOBS, ORACLE_PATTERN_CAP
from ..decomp.arboreal import ArborealDecomposition, check_decomposition
from ..errors import InvalidDecomposition, PatternTooLarge, SolverInvariantError
from ..graph.digraph import Digraph
from ..graph.oracle import oracle_find_pattern
from ..graph.pattern import Embedding, StarsPathsPattern
from .rspsi import RspsiInstance, resolve_decomposition, solve_rooted, solve_unrooted


class StarsPathsPipeline:
    """
    Orchestrates one search of a stars-paths pattern in a host digraph.

    Flow:
    1. host (+ decomposition) -> validation -> width
    2. pattern -> rooted or unrooted solver -> embedding
    3. embedding -> optional brute-force cross-check
    """

    def __init__(self, config: Dict = None, verbose: bool = True):
        """
        Initialize the pipeline.

        Args:
            config: Optional overrides: 'n_jobs', 'oracle_cap'
            verbose: Print stage progress
        """
        self.config = config or {}
        self.verbose = verbose

        # State
        self.host = None
        self.pattern = None
        self.decomposition = None
        self.width = None
        self.embedding = None
        self.oracle_agrees = None
        self.timings = {}
        self._executed = False

    def _log(self, message: str) -> None:
        if self.verbose:
            print(message)

    def run(self, host: Digraph, pattern: StarsPathsPattern,
            decomposition: Optional[ArborealDecomposition] = None,
            oracle_check: bool = False) -> Tuple[Optional[Embedding], Dict]:
        """
        Execute the complete pipeline.

        Args:
            host: Host digraph
            pattern: Target pattern; centers are pinned when it carries roots
            decomposition: Arboreal decomposition of the host (required when it has cycles)
            oracle_check: Re-check the verdict with the backtracking oracle

        Returns:
            Tuple of (embedding or None, metadata_dict)

        Raises:
            InvalidDecomposition: the supplied decomposition does not validate
            SolverInvariantError: the oracle disagrees with the solver
        """
        self.host = host
        self.pattern = pattern
        self.timings = {}
        self._log(f"[Pipeline] Starting with host n={host.n}, m={host.arc_count()}, "
                  f"pattern k={pattern.k}, r={pattern.r}")

        # Stage 1: Decomposition
        self._log("\n[Stage 1] Decomposition")
        start = time.perf_counter()
        self.decomposition = resolve_decomposition(host, decomposition)
        report = check_decomposition(host, self.decomposition)
        if not report.valid:
            raise InvalidDecomposition(report.error)
        self.width = report.width
        self.timings['decomposition'] = time.perf_counter() - start
        source = "supplied" if decomposition is not None else "DAG (topological)"
        self._log(f"    {source} decomposition: {self.decomposition.nodes} nodes, width={self.width}")

        # Stage 2: Solve
        self._log("\n[Stage 2] Solving")
        start = time.perf_counter()
        if pattern.roots is not None:
            self.embedding = solve_rooted(RspsiInstance(d=host, pattern=pattern,
                                                        decomposition=self.decomposition))
        else:
            self.embedding = solve_unrooted(host, pattern, self.decomposition,
                                            n_jobs=self.config.get('n_jobs', N_JOBS))
        self.timings['solve'] = time.perf_counter() - start
        verdict = "found" if self.embedding is not None else "not found"
        self._log(f"    Pattern {verdict} in {self.timings['solve']:.3f}s")

        # Stage 3: Cross-check
        self.oracle_agrees = None
        if oracle_check:
            self._log("\n[Stage 3] Oracle cross-check")
            self.oracle_agrees = self._cross_check()
            self._log(f"    Oracle agrees: {self.oracle_agrees}")

        self._executed = True
        metadata = self._compute_metadata()
        self._log("\n[Pipeline] Complete!")
        return self.embedding, metadata

    def _cross_check(self) -> Optional[bool]:
        """True on agreement, None when the pattern is above the oracle cap."""
        start = time.perf_counter()
        try:
            expected = oracle_find_pattern(self.host, self.pattern,
                                           cap=self.config.get('oracle_cap', ORACLE_PATTERN_CAP))
        except PatternTooLarge:
            self._log("    Pattern above the oracle cap, skipped")
            return None
        self.timings['oracle'] = time.perf_counter() - start
        if (expected is None) != (self.embedding is None):
            raise SolverInvariantError(
                f"Oracle says {'YES' if expected is not None else 'NO'}, "
                f"solver says {'YES' if self.embedding is not None else 'NO'}")
        return True

    def _compute_metadata(self) -> Dict:
        """Compute metadata about the pipeline execution."""
        return {
            'host_vertices': self.host.n,
            'host_arcs': self.host.arc_count(),
            'pattern_stars': self.pattern.k,
            'pattern_paths': self.pattern.r,
            'pattern_vertices': self.pattern.vertex_count(),
            'rooted': self.pattern.roots is not None,
            'width': self.width,
            'found': self.embedding is not None,
            'oracle_agrees': self.oracle_agrees,
            'timings': dict(self.timings),
        }

    def get_embedding_table(self) -> pd.DataFrame:
        """One row per star and per path of the found embedding."""
        if not self._executed:
            raise RuntimeError("Pipeline not executed. Call run() first.")
        rows = []
        if self.embedding is not None:
            for i, center in enumerate(self.embedding.star_centers):
                rows.append({'part': 'star', 'index': i, 'center': center,
                             'vertices': list(self.embedding.star_leaves[i])})
            for i, seq in enumerate(self.embedding.path_vertices):
                rows.append({'part': 'path', 'index': i, 'center': seq[0], 'vertices': list(seq)})
        return pd.DataFrame(rows, columns=['part', 'index', 'center', 'vertices'])

"""
Smoke benchmark: wall-clock solve time against n, k, r and width.

Records numbers only; nothing about growth rates is asserted.
"""

import time
from typing import Dict, List, Optional

import pandas as pd
from joblib import Parallel, delayed

from ..config import BENCHMARK_PARAMS, DTW_SEARCH_MAX_VERTICES, N_JOBS, RANDOM_SEED
from ..decomp.arboreal import ArborealDecomposition, dag_decomposition
from ..decomp.search import dtw_upper_small
from ..graph.digraph import Digraph
from ..graph.pattern import StarsPathsPattern
from ..reductions.random_instances import make_rng, random_dag, random_digraph, random_pattern, random_saddp
from .rspsi import solve_unrooted
from .saddp_solver import solve_saddp


def _decompose(d: Digraph) -> Optional[ArborealDecomposition]:
    found = dtw_upper_small(d, budget=2)
    return found[1] if found is not None else None


def _time_rspsi(d: Digraph, pattern: StarsPathsPattern, dec: ArborealDecomposition) -> Dict:
    start = time.perf_counter()
    emb = solve_unrooted(d, pattern, dec)
    return {'found': emb is not None, 'seconds': time.perf_counter() - start}


def _time_saddp(d: Digraph, r: int, k: int, dec: ArborealDecomposition, seed: int) -> Dict:
    inst = random_saddp(d, r, k, make_rng(seed))
    start = time.perf_counter()
    sol = solve_saddp(inst, dec)
    return {'found': sol is not None, 'seconds': time.perf_counter() - start}


def run_benchmark(params: Dict = None, seed: int = RANDOM_SEED, n_jobs: int = N_JOBS,
                  verbose: bool = False) -> pd.DataFrame:
    """
    Time both solvers on seeded random instances.

    Hosts are random DAGs (width 0) and, up to DTW_SEARCH_MAX_VERTICES
    vertices, random digraphs decomposed by the small-width search.

    Args:
        params: Grid overriding BENCHMARK_PARAMS ('n_values', 'k_values',
            'r_values', 'repeats', 'arc_probability')
        seed: Base seed; every cell of the grid derives its own
        n_jobs: joblib workers for the batch
        verbose: Print progress

    Returns:
        DataFrame with one row per run: problem, host, n, k, r, width, repeat, found, seconds
    """
    grid = {**BENCHMARK_PARAMS, **(params or {})}
    rng = make_rng(seed)
    jobs, rows = [], []
    for n in grid['n_values']:
        for repeat in range(grid['repeats']):
            hosts = [('dag', random_dag(n, grid['arc_probability'], rng))]
            if n <= DTW_SEARCH_MAX_VERTICES:
                hosts.append(('digraph', random_digraph(n, grid['arc_probability'], rng)))
            for kind, d in hosts:
                dec = dag_decomposition(d) if kind == 'dag' else _decompose(d)
                if dec is None:
                    continue
                for k in grid['k_values']:
                    for r in grid['r_values']:
                        base = {'host': kind, 'n': n, 'k': k, 'r': r, 'width': dec.width(), 'repeat': repeat}
                        pattern = random_pattern(k, r, rng)
                        rows.append({'problem': 'rspsi', **base})
                        jobs.append(delayed(_time_rspsi)(d, pattern, dec))
                        if r > 0:
                            rows.append({'problem': 'saddp', **base})
                            jobs.append(delayed(_time_saddp)(d, r, k, dec, int(rng.integers(2 ** 31))))

    if verbose:
        print(f"[Benchmark] {len(jobs)} runs, n_jobs={n_jobs}")
    results: List[Dict] = Parallel(n_jobs=n_jobs)(jobs)
    df = pd.DataFrame([{**row, **res} for row, res in zip(rows, results)])
    if verbose:
        print(f"[Benchmark] Complete! total {df['seconds'].sum():.2f}s")
    return df


def summarize(df: pd.DataFrame) -> pd.DataFrame:
    """Mean and max seconds per (problem, n, k, r, width)."""
    return (df.groupby(['problem', 'n', 'k', 'r', 'width'])['seconds']
              .agg(['mean', 'max', 'count'])
              .reset_index())

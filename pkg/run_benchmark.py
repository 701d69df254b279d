"""
Smoke benchmark of the RSPSI and SADDP solvers on seeded random instances
"""

import sys
import os

# Add src to path
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__)))
SRC_PATH = os.path.join(PROJECT_ROOT, "src")
sys.path.insert(0, SRC_PATH)

from src.config import N_JOBS, OUTPUT_DIR, RANDOM_SEED
from src.persistence.store import InstanceStore
from src.pipeline.benchmark import run_benchmark, summarize


def main():
    """Run the benchmark grid and save the raw table."""

    print("=" * 80)
    print("SOLVER SMOKE BENCHMARK")
    print("=" * 80)

    print("\n[Step 1] Timing solvers...")
    df = run_benchmark(seed=RANDOM_SEED, n_jobs=N_JOBS, verbose=True)
    print(f"    Runs: {len(df)}, positive: {int(df['found'].sum())}")

    print("\n[Step 2] Summary (seconds)")
    print("-" * 80)
    print(summarize(df).to_string(index=False))

    print("\n[Step 3] Saving results...")
    store = InstanceStore(os.path.join(OUTPUT_DIR, "benchmark"))
    print(f"    {store.save_result(df, 'benchmark')}")

    print("\n" + "=" * 80)


if __name__ == "__main__":
    main()

"""
Example usage of the stars-paths subdigraph toolkit
"""

import sys
import os

# Add src to path
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__)))
SRC_PATH = os.path.join(PROJECT_ROOT, "src")
sys.path.insert(0, SRC_PATH)

from src.config import FIXTURES_DIR, OUTPUT_DIR, RANDOM_SEED
from src.decomp.arboreal import check_decomposition
from src.graph.pattern import PatternPath, Star, StarsPathsPattern
from src.persistence import formats
from src.persistence.store import InstanceStore
from src.pipeline import StarsPathsPipeline
from src.reductions.random_instances import make_rng, random_two_two_formula
from src.reductions.sat22 import assignment_embedding, gen_sat22, satisfying_assignment


def main():
    """Walk through decomposition checking, pattern search and one hardness construction."""

    print("=" * 80)
    print("STARS-PATHS SUBDIGRAPH TOOLKIT")
    print("=" * 80)

    # Step 1: Load the seven-vertex fixture and its decomposition
    print("\n[Step 1] Loading host digraph and arboreal decomposition...")
    host_path = os.path.join(FIXTURES_DIR, "triangles7.dg")
    dec_path = os.path.join(FIXTURES_DIR, "triangles7.dec")
    host = formats.parse_digraph(formats.read_text(host_path), host_path)
    dec = formats.parse_decomposition(formats.read_text(dec_path), dec_path)
    report = check_decomposition(host, dec)
    print(f"    Host: {host.n} vertices, {host.arc_count()} arcs")
    print(f"    Decomposition valid: {report.valid}, width={report.width}")

    # Step 2: Search a pattern: two one-leaf stars joined by a 3-vertex path
    print("\n[Step 2] Running the search pipeline...")
    pattern = StarsPathsPattern(
        stars=[Star(out_leaves=1), Star(in_leaves=1)],
        paths=[PatternPath(source=0, target=1, vertex_count=3)],
    )
    pipeline = StarsPathsPipeline(verbose=True)
    embedding, metadata = pipeline.run(host, pattern, decomposition=dec, oracle_check=True)

    # Step 3: Display results
    print("\n[Step 3] Results")
    print("-" * 80)
    print("\nMetadata:")
    for key, value in metadata.items():
        if isinstance(value, dict):
            print(f"  {key}:")
            for k, v in value.items():
                print(f"    {k}: {v:.4f}" if isinstance(v, float) else f"    {k}: {v}")
        else:
            print(f"  {key}: {value}")
    print("\nEmbedding:")
    print(pipeline.get_embedding_table().to_string(index=False))

    # Step 4: A hardness construction with its certificate
    print("\n[Step 4] 3-SAT-(2,2) construction...")
    formula = random_two_two_formula(3, rng=make_rng(RANDOM_SEED))
    if formula is None:
        print("    No random formula found for this seed")
        return
    out = gen_sat22(formula)
    store = InstanceStore(os.path.join(OUTPUT_DIR, "sat22-example"))
    for path in store.save_output(out):
        print(f"    wrote {path}")
    assignment = satisfying_assignment(formula)
    if assignment is not None:
        certificate = assignment_embedding(formula, assignment, out)
        print(f"    Assignment {assignment} -> {len(certificate.used_vertices())} host vertices used")
        for line in formats.format_embedding(certificate):
            print(f"      {line}")
    else:
        print("    Formula is unsatisfiable")

    print("\n" + "=" * 80)
    print("DONE")
    print("=" * 80)


if __name__ == "__main__":
    main()

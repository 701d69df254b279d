"""
Configuration for the stars-paths subdigraph toolkit
"""

import os

# Project paths
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
OUTPUT_DIR = os.path.join(PROJECT_ROOT, "out")
FIXTURES_DIR = os.path.join(PROJECT_ROOT, "tests", "fixtures")

RANDOM_SEED = 42

# Size caps for the exhaustive routines
ORACLE_PATTERN_CAP = 12          # pattern vertices accepted by oracle_find_pattern
SADDP_ORACLE_MAX_VERTICES = 10   # host vertices accepted by oracle_saddp
DTW_SEARCH_MAX_VERTICES = 7      # host vertices accepted by dtw_upper_small
BREAKABILITY_MAX_VERTICES = 15   # host vertices accepted by breakability (w <= 2)
BREAKABILITY_MAX_GUARD = 2

# Parallelism (joblib); 1 keeps every run sequential and deterministic
N_JOBS = 1

# File names used by InstanceStore
STORE_FILES = {
    'host': 'host.dg',
    'pattern': 'target.pat',
    'target': 'target.dg',
    'roles': 'roles.txt',
    'decomposition': 'host.arb',
}

# Smoke benchmark grid
BENCHMARK_PARAMS = {
    'n_values': [5, 6, 7, 8],
    'k_values': [1, 2],
    'r_values': [0, 1, 2],
    'repeats': 3,
    'arc_probability': 0.3,
}

# Random instance defaults
RANDOM_ARC_PROBABILITY = 0.3
RANDOM_MAX_LEAVES = 2
RANDOM_MAX_PATH_VERTICES = 4

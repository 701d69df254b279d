from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings

from src.decomp.arboreal import (
    ArborealDecomposition,
    TreeEdge,
    check_decomposition,
    dag_decomposition,
    is_guarded,
    trivial_decomposition,
    validate,
)
from src.decomp.breakability import breakability
from src.decomp.search import dtw_upper_small
from src.errors import GuardViolation, NotADag, NotAPartition, OverlappingSets, TooLarge
from src.graph.digraph import (
    antidirected_path,
    directed_cycle,
    directed_path,
    from_arc_list,
    transitive_tournament,
)
from src.graph.traversal import reachable
from src.reductions.random_instances import make_rng, random_dag

from .conftest import A, B, C, D, E, F, G
from .strategies import digraphs


# ----- Guarded sets -----

def test_whole_vertex_set_is_guarded(triangles7):
    ok, cert = is_guarded(triangles7, triangles7.vertices(), [])
    assert ok and cert.violating_walk is None


def test_triangles7_lower_part_guarded_by_b_c(triangles7):
    ok, _ = is_guarded(triangles7, {D, E, F, G}, {B, C})
    assert ok


def test_triangle_certificate(triangle):
    ok, cert = is_guarded(triangle, {0, 1}, set())
    assert not ok
    assert cert.violating_walk == [1, 2, 0]


def test_guard_overlap_rejected(triangles7):
    with pytest.raises(OverlappingSets):
        is_guarded(triangles7, {B}, {B})


def _guarded_by_paths(d, s):
    """Every u -> v walk between vertices of s stays inside s."""
    outside = [t for t in d.vertices() if t not in s]
    for t in outside:
        if any(reachable(d, u, t) for u in s) and any(reachable(d, t, v) for v in s):
            return False
    return True


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=5))
def test_guardedness_two_formulations_agree(d):
    for size in range(d.n + 1):
        for s in combinations(range(d.n), size):
            ok, cert = is_guarded(d, s, [])
            assert ok == _guarded_by_paths(d, set(s))
            if not ok:
                walk = cert.violating_walk
                assert walk[0] in s and walk[-1] in s
                assert any(v not in s for v in walk)
                assert all(d.has_arc(u, v) for u, v in zip(walk, walk[1:]))


# ----- Validation -----

def test_triangles7_decomposition_has_width_two(triangles7, triangles7_dec):
    assert validate(triangles7, triangles7_dec) == (True, 2)


def test_triangles7_perturbed_guard_violation(triangles7, triangles7_dec):
    edges = [TreeEdge(parent=0, child=1, guard=[])] + [e for e in triangles7_dec.edges if e.parent != 0]
    broken = ArborealDecomposition(nodes=4, root=0, bags=triangles7_dec.bags, edges=edges)
    with pytest.raises(GuardViolation) as info:
        validate(triangles7, broken)
    walk = info.value.walk
    assert info.value.edge == (0, 1)
    assert walk[0] in range(1, 7) and walk[-1] in range(1, 7) and A in walk
    report = check_decomposition(triangles7, broken)
    assert not report.valid and report.walk == walk


def test_trivial_decomposition_width(triangles7):
    assert validate(triangles7, trivial_decomposition(triangles7)) == (True, 6)


def test_partition_errors(path3):
    dec = ArborealDecomposition(nodes=2, root=0, bags={0: [0, 1], 1: [1, 2]},
                                edges=[TreeEdge(parent=0, child=1)])
    with pytest.raises(NotAPartition):
        validate(path3, dec)
    missing = ArborealDecomposition(nodes=1, root=0, bags={0: [0, 1]})
    with pytest.raises(NotAPartition):
        validate(path3, missing)


def test_tree_shape_rejected():
    with pytest.raises(ValueError):
        ArborealDecomposition(nodes=2, root=0, bags={0: [0], 1: [1]})


def test_dag_decomposition_path(path3, triangle):
    dec = dag_decomposition(path3)
    assert dec.nodes == 3
    assert validate(path3, dec) == (True, 0)
    with pytest.raises(NotADag):
        dag_decomposition(triangle)


def test_random_dags_have_width_zero():
    rng = make_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 21))
        d = random_dag(n, float(rng.uniform(0.1, 0.6)), rng)
        assert validate(d, dag_decomposition(d)) == (True, 0)


# ----- Small-width search -----

@settings(max_examples=30, deadline=None)
@given(digraphs(max_n=6, acyclic=True))
def test_dtw_search_on_dags(d):
    width, dec = dtw_upper_small(d, budget=2)
    assert width == 0
    assert validate(d, dec) == (True, 0)


def test_dtw_search_examples():
    bidirected = from_arc_list(3, [(u, v) for u in range(3) for v in range(3) if u != v])
    width, dec = dtw_upper_small(bidirected, budget=2)
    assert width == 2 and validate(bidirected, dec) == (True, 2)
    cycle_width, cycle_dec = dtw_upper_small(directed_cycle(5), budget=2)
    assert cycle_width <= 2 and validate(directed_cycle(5), cycle_dec)[0]


def test_dtw_search_cap():
    with pytest.raises(TooLarge):
        dtw_upper_small(directed_path(8), budget=1)


# ----- Breakability -----

def test_breakability_examples():
    assert breakability(directed_path(5), range(5), 0) == 1
    assert breakability(antidirected_path(5), range(5), 0) == 3
    for w in range(3):
        assert breakability(transitive_tournament(4), range(4), w) == 1


def test_breakability_with_explicit_arcs():
    d = transitive_tournament(3)
    # H = the two arcs 0->1 and 1->2 only; still one component
    assert breakability(d, range(3), 0, h_arcs=[(0, 1), (1, 2)]) == 1
    assert breakability(d, [0, 2], 0, h_arcs=[]) == 2


def test_breakability_cap():
    with pytest.raises(TooLarge):
        breakability(directed_path(16), range(16), 0)


def _paths_in_host(rng, k):
    """k disjoint directed paths placed on random host vertices, plus random extra arcs."""
    n = int(rng.integers(k, 9))
    order = [int(v) for v in rng.permutation(n)]
    cuts = sorted(int(x) for x in rng.choice(np.arange(1, n), size=k - 1, replace=False)) if k > 1 else []
    pieces = [order[a:b] for a, b in zip([0] + cuts, cuts + [n])]
    h_arcs = [(p[i], p[i + 1]) for p in pieces for i in range(len(p) - 1)]
    extra = [(u, v) for u, v in product(range(n), repeat=2)
             if u != v and (u, v) not in h_arcs and rng.random() < 0.2]
    return from_arc_list(n, h_arcs + extra), h_arcs


@pytest.mark.parametrize("k", [1, 2, 3])
def test_path_breakability_bound(k):
    rng = make_rng(100 + k)
    for _ in range(40):
        d, h_arcs = _paths_in_host(rng, k)
        for w in range(3):
            assert breakability(d, d.vertices(), w, h_arcs=h_arcs) <= k + w

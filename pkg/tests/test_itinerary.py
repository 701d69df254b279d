from itertools import product

import pytest

from src.errors import ArcFromBToA
from src.graph.digraph import from_arc_list
from src.pipeline.itinerary import RoutingContext, base_itinerary, combine_sequential, combine_small
from src.pipeline.saddp import Request, SaddpInstance, oracle_saddp
from src.reductions.random_instances import make_rng, random_digraph


# ----- Base itineraries -----

def test_single_vertex_counts_against_budget():
    ctx = RoutingContext(from_arc_list(1, []), [[0]])
    f = base_itinerary(ctx, [0])
    assert f.query([(0, 0, 1)], [0]) is None
    assert f.query([(0, 0, 1)], [1]) == [[0]]


def test_single_arc():
    ctx = RoutingContext(from_arc_list(2, [(0, 1)]), [])
    assert base_itinerary(ctx, [0, 1]).query([(0, 1, 2)], []) == [[0, 1]]
    ctx = RoutingContext(from_arc_list(2, []), [])
    assert not base_itinerary(ctx, [0, 1]).holds([(0, 1, 2)], [])


def test_base_from_instance():
    d = from_arc_list(2, [(0, 1)])
    inst = SaddpInstance(d=d, requests=[Request(source=0, target=1, size=2)])
    assert base_itinerary(inst, [0, 1]).holds([(0, 1, 2)], [])


def test_terminals_outside_set():
    ctx = RoutingContext(from_arc_list(3, [(0, 1), (1, 2)]), [])
    assert base_itinerary(ctx, [0, 1]).query([(0, 2, 3)], []) is None


def test_closed_request_rejected():
    ctx = RoutingContext(from_arc_list(3, [(0, 1), (1, 2), (2, 0)]), [])
    with pytest.raises(ValueError):
        base_itinerary(ctx, [0, 1, 2]).query([(0, 0, 3)], [])


# ----- Sequential combination -----

def _split_path():
    # A = {0, 1} with 0 -> 1, B = {2, 3} with 2 -> 3, bridge 1 -> 2
    ctx = RoutingContext(from_arc_list(4, [(0, 1), (1, 2), (2, 3)]), [[1], [2]])
    return ctx, base_itinerary(ctx, [0, 1]), base_itinerary(ctx, [2, 3])


def test_requests_inside_first_part():
    _, fa, fb = _split_path()
    f = combine_sequential(fa, fb)
    for budgets in product(range(2), repeat=2):
        assert f.query([(0, 1, 2)], list(budgets)) == fa.query([(0, 1, 2)], list(budgets))


def test_request_backwards_is_false():
    _, fa, fb = _split_path()
    assert combine_sequential(fa, fb).query([(2, 1, 2)], [1, 1]) is None


def test_request_across_the_bridge():
    _, fa, fb = _split_path()
    f = combine_sequential(fa, fb)
    assert f.query([(0, 3, 4)], [1, 1]) == [[0, 1, 2, 3]]
    assert f.query([(0, 3, 4)], [1, 0]) is None
    assert f.query([(0, 3, 3)], [1, 1]) is None


def test_arc_from_second_into_first():
    ctx = RoutingContext(from_arc_list(2, [(1, 0)]), [])
    with pytest.raises(ArcFromBToA):
        combine_sequential(base_itinerary(ctx, [0]), base_itinerary(ctx, [1]))


def test_overlapping_parts_rejected():
    ctx = RoutingContext(from_arc_list(2, [(0, 1)]), [])
    with pytest.raises(ValueError):
        combine_sequential(base_itinerary(ctx, [0, 1]), base_itinerary(ctx, [1]))


# ----- Small-set combination -----

def test_empty_small_set_is_identity():
    ctx = RoutingContext(from_arc_list(2, [(0, 1)]), [])
    fa = base_itinerary(ctx, [0, 1])
    assert combine_small(fa, []) is fa


def test_path_through_small_vertex():
    ctx = RoutingContext(from_arc_list(3, [(0, 1), (1, 2)]), [[1]])
    f = combine_small(base_itinerary(ctx, [0, 2]), [1])
    assert f.query([(0, 2, 3)], [1]) == [[0, 1, 2]]
    assert f.query([(0, 2, 3)], [0]) is None


def test_blocks_larger_than_width_rejected():
    ctx = RoutingContext(from_arc_list(4, [(0, 1), (1, 2), (2, 3)]), [])
    with pytest.raises(ValueError, match="at most 2 vertices, got 3"):
        base_itinerary(ctx, [0, 1, 2], w=1)
    fa = base_itinerary(ctx, [0], w=0)
    with pytest.raises(ValueError, match="combine_small takes at most 1 vertices"):
        combine_small(fa, [1, 2], w=0)
    f = combine_small(base_itinerary(ctx, [0, 1], w=1), [2, 3], w=1)
    assert f.query([(0, 3, 4)], []) == [[0, 1, 2, 3]]


# ----- Agreement with the oracle -----

def _oracle_holds(d, vertices, requests, avoid_sets, budgets):
    keep = sorted(vertices)
    index = {v: i for i, v in enumerate(keep)}
    sub = from_arc_list(len(keep), [(index[u], index[v]) for u, v in d.arcs if u in index and v in index])
    inst = SaddpInstance(
        d=sub,
        requests=[Request(source=index[s], target=index[t], size=p) for s, t, p in requests],
        avoid_sets=[[index[v] for v in x if v in index] for x in avoid_sets],
        budgets=list(budgets),
    )
    return oracle_saddp(inst) is not None


def test_combinations_match_oracle_on_random_splits():
    rng = make_rng(21)
    checked = 0
    while checked < 120:
        n = int(rng.integers(4, 8))
        d = random_digraph(n, 0.35, rng)
        order = [int(v) for v in rng.permutation(n)]
        cut = int(rng.integers(1, n - 1))
        a, b = order[:cut], order[cut:]
        small, b = b[:1], b[1:]
        if any(d.has_arc(u, v) for u in b for v in a):
            continue
        avoid = [[int(v) for v in rng.choice(n, size=2, replace=False)]]
        ctx = RoutingContext(d, avoid)
        fa, fb = base_itinerary(ctx, a), base_itinerary(ctx, b)
        f = combine_small(combine_sequential(fa, fb), small)
        s, t = (int(v) for v in rng.choice(n, size=2, replace=False))
        for p in range(2, n + 1):
            for budget in range(3):
                expected = _oracle_holds(d, d.vertices(), [(s, t, p)], avoid, [budget])
                assert f.holds([(s, t, p)], [budget]) == expected
        checked += 1


def test_budget_monotone_for_materialized_entries():
    rng = make_rng(22)
    for _ in range(40):
        d = random_digraph(6, 0.4, rng)
        ctx = RoutingContext(d, [[0, 1, 2], [3, 4]])
        f = base_itinerary(ctx, d.vertices())
        s, t = (int(v) for v in rng.choice(6, size=2, replace=False))
        for p in range(2, 6):
            for x0, x1 in product(range(3), range(2)):
                if f.holds([(s, t, p)], [x0, x1]):
                    assert f.holds([(s, t, p)], [x0 + 1, x1])
                    assert f.holds([(s, t, p)], [x0, x1 + 1])

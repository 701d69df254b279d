import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.graph.digraph import directed_path, disjoint_union, from_arc_list, out_star
from src.graph.oracle import oracle_find_pattern
from src.graph.pattern import validate_embedding
from src.pipeline.special_cases import (
    disjoint_arcs_pattern,
    find_disjoint_arcs,
    find_once_subdivided_star,
    once_subdivided_star_pattern,
)

from .strategies import digraphs


# ----- Disjoint arcs -----

def test_zero_arcs_is_empty():
    emb = find_disjoint_arcs(directed_path(2), 0)
    assert emb.used_vertices() == []


def test_star_has_one_disjoint_arc():
    assert find_disjoint_arcs(out_star(2), 2) is None
    assert find_disjoint_arcs(out_star(2), 1) is not None


def test_two_separate_arcs():
    d, _ = disjoint_union([directed_path(2), directed_path(2)])
    emb = find_disjoint_arcs(d, 2)
    assert validate_embedding(d, disjoint_arcs_pattern(2), emb) == []


def test_pattern_arguments():
    with pytest.raises(ValueError):
        disjoint_arcs_pattern(0)
    with pytest.raises(ValueError):
        find_disjoint_arcs(directed_path(2), -1)
    with pytest.raises(ValueError):
        once_subdivided_star_pattern(-1)


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=7), st.integers(min_value=1, max_value=3))
def test_disjoint_arcs_match_oracle(d, l):
    pattern = disjoint_arcs_pattern(l)
    emb = find_disjoint_arcs(d, l)
    assert (emb is None) == (oracle_find_pattern(d, pattern) is None)
    if emb is not None:
        assert validate_embedding(d, pattern, emb) == []


# ----- Once-subdivided stars -----

def test_subdivided_star_found_at_its_center():
    emb = find_once_subdivided_star(directed_path(3), 1)
    assert emb.star_centers == [0, 1] and emb.star_leaves == [[], [2]]


def test_plain_star_has_no_second_level():
    assert find_once_subdivided_star(out_star(2), 1) is None


def test_in_orientation():
    d = from_arc_list(5, [(1, 0), (2, 1), (3, 0), (4, 3)])
    emb = find_once_subdivided_star(d, 2, orientation="in")
    pattern = once_subdivided_star_pattern(2, orientation="in")
    assert emb.star_centers[0] == 0
    assert validate_embedding(d, pattern, emb) == []
    assert find_once_subdivided_star(d, 2, orientation="out") is None


def test_spokes_may_feed_each_other():
    # 0 -> 1, 0 -> 2, 1 -> 2: a single spoke 1 with second vertex 2 exists
    d = from_arc_list(3, [(0, 1), (0, 2), (1, 2)])
    assert find_once_subdivided_star(d, 1) is not None
    assert find_once_subdivided_star(d, 2) is None


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=7), st.integers(min_value=1, max_value=2), st.sampled_from(["out", "in"]))
def test_subdivided_star_matches_oracle(d, l, orientation):
    pattern = once_subdivided_star_pattern(l, orientation)
    emb = find_once_subdivided_star(d, l, orientation)
    assert (emb is None) == (oracle_find_pattern(d, pattern) is None)
    if emb is not None:
        assert validate_embedding(d, pattern, emb) == []

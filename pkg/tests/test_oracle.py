from itertools import permutations

import pytest
from hypothesis import given, settings

from src.errors import PatternTooLarge
from src.graph.digraph import antidirected_path, directed_path, from_arc_list, transitive_tournament
from src.graph.oracle import find_subdigraph_map, is_embedding_map, oracle_find_pattern
from src.graph.pattern import (
    Embedding,
    PatternPath,
    Star,
    StarsPathsPattern,
    pattern_to_digraph,
    validate_embedding,
)

from .strategies import digraphs, patterns


def _brute_force(d, p):
    for image in permutations(range(d.n), p.n):
        if all(d.has_arc(image[u], image[v]) for u, v in p.arcs):
            return True
    return False


def test_single_arc_found():
    emb = oracle_find_pattern(from_arc_list(2, [(0, 1)]), from_arc_list(2, [(0, 1)]))
    assert emb is not None and emb.vertex_map == {0: 0, 1: 1}


def test_tournament_in_forward_k3():
    assert oracle_find_pattern(transitive_tournament(3), transitive_tournament(3)) is not None


def test_antidirected_not_in_directed_path():
    assert oracle_find_pattern(directed_path(4), antidirected_path(4)) is None


def test_cap_is_enforced():
    with pytest.raises(PatternTooLarge):
        oracle_find_pattern(directed_path(20), directed_path(13))
    assert oracle_find_pattern(directed_path(20), directed_path(13), cap=None) is not None


def test_twin_leaves_take_increasing_images():
    # 0 -> {1, 2, 3}; pattern center 0 with leaves 1, 2
    mapping = find_subdigraph_map(from_arc_list(4, [(0, 1), (0, 2), (0, 3)]), from_arc_list(3, [(0, 1), (0, 2)]))
    assert mapping[0] == 0 and mapping[1] < mapping[2]
    wide = from_arc_list(8, [(0, v) for v in range(1, 8)])
    assert find_subdigraph_map(from_arc_list(8, [(0, v) for v in range(1, 7)]), wide, cap=None) is None


def test_pinned_twins_keep_their_images():
    d = from_arc_list(3, [(0, 1), (0, 2)])
    p = from_arc_list(3, [(0, 1), (0, 2)])
    assert find_subdigraph_map(d, p, pinned={1: 2, 2: 1}) == {0: 0, 1: 2, 2: 1}


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=5), digraphs(max_n=4))
def test_oracle_matches_exhaustive_maps(d, p):
    emb = oracle_find_pattern(d, p)
    assert (emb is not None) == _brute_force(d, p)
    if emb is not None:
        ok, reason = is_embedding_map(d, p, emb.vertex_map)
        assert ok, reason


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=6), patterns())
def test_pattern_embeddings_validate(d, pattern):
    emb = oracle_find_pattern(d, pattern)
    flat, _ = pattern_to_digraph(pattern)
    assert (emb is not None) == _brute_force(d, flat)
    if emb is not None:
        assert validate_embedding(d, pattern, emb) == []


def test_roots_pin_centers():
    d = from_arc_list(3, [(0, 1), (2, 1)])
    pattern = StarsPathsPattern(stars=[Star(out_leaves=1)], roots=[2])
    emb = oracle_find_pattern(d, pattern)
    assert emb.star_centers == [2] and emb.star_leaves == [[1]]
    assert oracle_find_pattern(d, pattern.with_roots([1])) is None


def test_validate_embedding_reports_reuse():
    d = from_arc_list(3, [(0, 1), (1, 2), (2, 0)])
    pattern = StarsPathsPattern(stars=[Star(out_leaves=1), Star()],
                                paths=[PatternPath(source=0, target=1, vertex_count=3)])
    bad = Embedding(star_centers=[0, 2], star_leaves=[[1], []], path_vertices=[[0, 1, 2]])
    assert "Embedding reuses a vertex" in validate_embedding(d, pattern, bad)


def test_closed_path_lists_center_twice():
    d = from_arc_list(3, [(0, 1), (1, 2), (2, 0)])
    pattern = StarsPathsPattern(stars=[Star()], paths=[PatternPath(source=0, target=0, vertex_count=3)])
    emb = oracle_find_pattern(d, pattern)
    assert emb.path_vertices[0][0] == emb.path_vertices[0][-1]
    assert len(emb.path_vertices[0]) == 4


@pytest.mark.parametrize("kwargs", [
    {"stars": []},
    {"stars": [Star()], "paths": [PatternPath(source=0, target=1, vertex_count=2)]},
    {"stars": [Star()], "paths": [PatternPath(source=0, target=0, vertex_count=2)]},
    {"stars": [Star(), Star()], "roots": [1, 1]},
])
def test_pattern_shape_rejected(kwargs):
    with pytest.raises(ValueError):
        StarsPathsPattern(**kwargs)

from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from src.graph.digraph import from_arc_list
from src.graph.pattern import Star, StarsPathsPattern
from src.pipeline.star_system import (
    StarSpec,
    build_system,
    check_assignment,
    hall_feasible,
    homogenize,
    is_feasible,
    solve,
)


def _stars(*stars):
    return StarsPathsPattern(stars=[Star(out_leaves=o, in_leaves=i) for o, i in stars])


# ----- Homogenize -----

def test_homogeneous_star_kept():
    specs, multiplicity = homogenize(_stars((2, 0)), [5])
    assert specs == [StarSpec(center_in_host=5, orientation="out", leaf_count=2)]
    assert multiplicity == {5: [0]}


def test_mixed_star_split_on_same_vertex():
    specs, multiplicity = homogenize(_stars((2, 1)), [3])
    assert [(s.orientation, s.leaf_count, s.center_in_host) for s in specs] == [("out", 2, 3), ("in", 1, 3)]
    assert multiplicity == {3: [0, 1]}


def test_all_homogeneous_gives_one_spec_each():
    specs, multiplicity = homogenize(_stars((1, 0), (0, 2), (0, 0)), [0, 1, 2])
    assert len(specs) == 3
    assert [s.pattern_star for s in specs] == [0, 1, 2]
    assert multiplicity == {0: [0], 1: [1], 2: [2]}


# ----- Build -----

# vertex names: centers v1=0, v2=1, leaves a=2, b=3, c=4
V1, V2, LA, LB, LC = range(5)


def _out(center, count):
    return StarSpec(center_in_host=center, orientation="out", leaf_count=count)


def test_single_cell():
    d = from_arc_list(5, [(V1, LA), (V1, LB)])
    system = build_system(d, [_out(V1, 2)])
    assert system.neighborhoods == [frozenset({LA, LB})]
    assert system.cells == {frozenset({0}): frozenset({LA, LB})}


def test_shared_neighborhood_single_cell():
    d = from_arc_list(5, [(c, x) for c in (V1, V2) for x in (LA, LB, LC)])
    system = build_system(d, [_out(V1, 1), _out(V2, 1)])
    assert system.cells == {frozenset({0, 1}): frozenset({LA, LB, LC})}


def test_reserved_removed_everywhere():
    d = from_arc_list(5, [(c, x) for c in (V1, V2) for x in (LA, LB, LC)])
    system = build_system(d, [_out(V1, 1), _out(V2, 1)], reserved=[LA])
    assert all(LA not in n for n in system.neighborhoods)
    assert all(LA not in cell for cell in system.cells.values())


def test_slack_length_checked():
    d = from_arc_list(5, [(V1, LA)])
    try:
        build_system(d, [_out(V1, 1)], slacks=[0, 0])
    except ValueError:
        return
    raise AssertionError("expected ValueError")


# ----- Solve -----

def test_two_leaves_no_slack():
    d = from_arc_list(5, [(V1, LA), (V1, LB)])
    assignment = solve(build_system(d, [_out(V1, 2)]))
    assert assignment.leaves == [[LA, LB]]


def test_slack_makes_it_infeasible():
    d = from_arc_list(5, [(V1, LA), (V1, LB)])
    system = build_system(d, [_out(V1, 2)], slacks=[1])
    assert solve(system) is None
    assert not is_feasible(system)


def test_shared_three_vertices():
    d = from_arc_list(5, [(c, x) for c in (V1, V2) for x in (LA, LB, LC)])
    assert solve(build_system(d, [_out(V1, 2), _out(V2, 2)])) is None
    system = build_system(d, [_out(V1, 2), _out(V2, 1)])
    assignment = solve(system)
    assert assignment is not None and check_assignment(system, assignment) == []


def test_same_center_in_and_out():
    # 0 <-> 1 both ways: the out- and in-star on 0 cannot both take 1
    d = from_arc_list(3, [(0, 1), (1, 0), (0, 2)])
    specs, _ = homogenize(_stars((1, 1)), [0])
    system = build_system(d, specs)
    assignment = solve(system)
    assert assignment.leaves == [[2], [1]]
    specs, _ = homogenize(_stars((2, 1)), [0])
    assert solve(build_system(d, specs)) is None


# ----- Exhaustive cross-check -----

@st.composite
def systems(draw):
    """Up to four specs over a pool of at most eight leaf vertices."""
    pool = draw(st.integers(min_value=1, max_value=8))
    count = draw(st.integers(min_value=1, max_value=4))
    centers = [pool + draw(st.integers(min_value=0, max_value=count - 1)) for _ in range(count)]
    specs, arcs = [], set()
    for c in centers:
        orientation = draw(st.sampled_from(["out", "in"]))
        nbrs = draw(st.sets(st.integers(min_value=0, max_value=pool - 1)))
        for x in nbrs:
            arcs.add((c, x) if orientation == "out" else (x, c))
        specs.append(StarSpec(center_in_host=c, orientation=orientation,
                              leaf_count=draw(st.integers(min_value=0, max_value=3))))
    slacks = [draw(st.integers(min_value=0, max_value=2)) for _ in specs]
    d = from_arc_list(pool + count, sorted(arcs))
    return build_system(d, specs, slacks=slacks)


def _brute_force(system):
    def place(i, taken):
        if i == len(system.specs):
            return all(len(n - taken) >= s for n, s in zip(system.neighborhoods, system.slacks))
        free = sorted(system.neighborhoods[i] - taken)
        return any(place(i + 1, taken | set(choice))
                   for choice in combinations(free, system.specs[i].leaf_count))
    return place(0, frozenset())


@settings(max_examples=150, deadline=None)
@given(systems())
def test_solve_matches_exhaustive_search(system):
    expected = _brute_force(system)
    assignment = solve(system)
    assert (assignment is not None) == expected
    assert is_feasible(system) == expected
    if assignment is not None:
        assert check_assignment(system, assignment) == []
        assert hall_feasible(system)


@settings(max_examples=100, deadline=None)
@given(systems(), st.data())
def test_feasibility_is_monotone(system, data):
    if not is_feasible(system):
        return
    i = data.draw(st.integers(min_value=0, max_value=len(system.specs) - 1))
    slacks = list(system.slacks)
    slacks[i] = max(0, slacks[i] - 1)
    specs = list(system.specs)
    spec = specs[i]
    specs[i] = StarSpec(center_in_host=spec.center_in_host, orientation=spec.orientation,
                        leaf_count=max(0, spec.leaf_count - 1))
    looser = system.model_copy(update={"slacks": slacks})
    assert is_feasible(looser)
    fewer = system.model_copy(update={"specs": specs})
    assert is_feasible(fewer)

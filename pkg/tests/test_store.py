import os

import pandas as pd
import pytest

from src.decomp.arboreal import dag_decomposition
from src.graph.digraph import directed_path
from src.graph.pattern import Embedding
from src.persistence.store import InstanceStore
from src.reductions.antidirected import gen_antidirected
from src.reductions.expansion import expansion_output
from src.reductions.sat22 import Formula, gen_sat22


@pytest.fixture
def store(tmp_path):
    return InstanceStore(str(tmp_path / "instance"))


def test_store_creates_directory(tmp_path):
    InstanceStore(str(tmp_path / "a" / "b"))
    assert os.path.isdir(tmp_path / "a" / "b")


def test_unknown_kind(store):
    with pytest.raises(KeyError):
        store.path_of("weights")


def test_host_and_decomposition(store):
    d = directed_path(4)
    dec = dag_decomposition(d)
    store.save_host(d)
    store.save_decomposition(dec)
    assert store.load_host() == d
    assert store.load_decomposition() == dec
    assert store.summary() == {"host": True, "pattern": False, "target": False,
                               "roles": False, "decomposition": True}


def test_missing_files(store):
    with pytest.raises(FileNotFoundError):
        store.load_host()
    assert store.load_decomposition() is None
    assert store.load_annotations().roles == {}


def test_pattern_output_round_trip(store):
    formula = Formula(variables=3, clauses=[[1, 2, 3], [1, -2, -3], [-1, 2, -3], [-1, -2, 3]])
    out = gen_sat22(formula)
    written = store.save_output(out)
    assert [os.path.basename(p) for p in written] == ["host.dg", "target.pat", "roles.txt"]
    loaded = store.load_output()
    assert loaded.host == out.host
    assert loaded.target == out.target
    assert loaded.roles == out.roles
    assert loaded.params == out.params


def test_digraph_target_and_terminals(store):
    out = expansion_output(directed_path(2))
    assert len(store.save_output(out)) == 2
    assert store.load_output().target is None
    store.save_target(out.host)
    assert store.load_target() == out.host

    anti = gen_antidirected(3, [(0, 1), (1, 2), (0, 2)], 0, 2, [((0, 1), (1, 2))])
    store.save_output(anti)
    assert store.load_annotations().terminals == (0, 2)


def test_result_snapshots(store):
    df = pd.DataFrame({"n": [3, 4], "found": [True, False]})
    path = store.save_result(df, "benchmark")
    assert path.endswith("benchmark.pkl")
    store.save_result(Embedding(star_centers=[1], star_leaves=[[2]]), "embedding")
    assert store.list_results() == ["benchmark", "embedding"]
    pd.testing.assert_frame_equal(store.load_result("benchmark"), df)
    assert store.load_result("embedding").star_leaves == [[2]]
    with pytest.raises(FileNotFoundError):
        store.load_result("missing")

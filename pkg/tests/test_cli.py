import os

import pytest

from src.cli import app
from src.cli.app import EXIT_ERROR, EXIT_NO, EXIT_YES, main

from .conftest import fixture_path

STAR_PATH_STAR = "pattern k=2\nstar 0 out=1 in=0\nstar 1 out=0 in=1\npath 0 1 len=3\n"


@pytest.fixture
def pattern_file(tmp_path):
    path = tmp_path / "target.pat"
    path.write_text(STAR_PATH_STAR)
    return str(path)


def test_validate_decomp_reports_width(capsys):
    code = main(["validate-decomp", fixture_path("triangles7.dg"), fixture_path("triangles7.dec")])
    out = capsys.readouterr().out
    assert code == EXIT_YES
    assert "VERDICT: YES" in out and "width=2" in out


def test_validate_decomp_prints_violation(tmp_path, capsys):
    host = tmp_path / "triangle.dg"
    host.write_text("digraph n=3\n0 1\n1 2\n2 0\n")
    code = main(["validate-decomp", str(host), fixture_path("path3.dec")])
    out = capsys.readouterr().out
    assert code == EXIT_NO
    assert "VERDICT: NO" in out and "violation edge" in out


def test_blocked_saddp_is_negative(capsys):
    code = main(["solve-saddp", fixture_path("path3.dg"), fixture_path("path3_blocked.saddp"),
                 "--decomp", fixture_path("path3.dec"), "--oracle-check"])
    captured = capsys.readouterr()
    assert code == EXIT_NO
    assert "VERDICT: NO" in captured.out
    assert "oracle-check: agree" in captured.err


def test_solve_rspsi_prints_embedding(pattern_file, capsys):
    code = main(["solve-rspsi", fixture_path("triangles7.dg"), pattern_file,
                 "--decomp", fixture_path("triangles7.dec"), "--oracle-check"])
    captured = capsys.readouterr()
    assert code == EXIT_YES
    lines = captured.out.splitlines()
    assert lines[0] == "VERDICT: YES"
    assert sum(line.startswith("star ") for line in lines) == 2
    assert sum(line.startswith("path 0 ") for line in lines) == 1
    assert "oracle-check: agree" in captured.err


def test_cyclic_host_without_decomposition(pattern_file, capsys):
    code = main(["solve-rspsi", fixture_path("triangles7.dg"), pattern_file])
    assert code == EXIT_ERROR
    assert "NoDecomposition" in capsys.readouterr().err


def test_special_disjoint_arcs(capsys):
    assert main(["solve-rspsi", fixture_path("triangles7.dg"), "--special", "arcs", "--l", "2"]) == EXIT_YES
    assert main(["solve-rspsi", fixture_path("triangles7.dg"), "--special", "arcs", "--l", "4"]) == EXIT_NO
    capsys.readouterr()
    assert main(["solve-rspsi", fixture_path("triangles7.dg"), "--special", "arcs"]) == EXIT_ERROR
    assert "--special needs --l" in capsys.readouterr().err


def test_gen_sat22_writes_instance(tmp_path, capsys):
    out_dir = tmp_path / "sat"
    code = main(["gen", "sat22", fixture_path("two_two.cnf"), "-o", str(out_dir)])
    out = capsys.readouterr().out
    assert code == EXIT_YES
    assert sorted(os.listdir(out_dir)) == ["host.dg", "roles.txt", "target.pat"]
    assert out.count("wrote ") == 3
    assert "is_dag=true" in out


@pytest.fixture
def triangle_graph(tmp_path):
    path = tmp_path / "triangle.graph"
    path.write_text("graph n=3 k=3\n0 1\n1 2\n0 2\n")
    return str(path)


def test_gen_oracle_check_agrees(triangle_graph, tmp_path, capsys):
    code = main(["gen", "clique", triangle_graph, "-o", str(tmp_path / "out"), "--oracle-check"])
    captured = capsys.readouterr()
    assert code == EXIT_YES
    assert "source=YES host=YES" in captured.out
    assert "oracle-check: agree" in captured.err


def test_gen_oracle_check_disagreement_exits_no(triangle_graph, tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(app, "has_clique", lambda n, edges, k: False)
    code = main(["gen", "clique", triangle_graph, "-o", str(tmp_path / "out"), "--oracle-check"])
    captured = capsys.readouterr()
    assert code == EXIT_NO
    assert "source=NO host=YES" in captured.out
    assert "disagree" in captured.err


def test_gen_needs_a_source(capsys):
    assert main(["gen", "clique"]) == EXIT_ERROR
    assert "needs an input file or --seed" in capsys.readouterr().err


def test_gen_random_expansion(tmp_path, capsys):
    code = main(["gen", "expansion", "--seed", "3", "--size", "3", "-o", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == EXIT_YES
    assert "expected_dtw_bound=3" in out
    assert not os.path.exists(tmp_path / "target.pat")


def test_oracle_command(pattern_file, capsys):
    assert main(["oracle", fixture_path("triangles7.dg"), pattern_file]) == EXIT_YES
    assert "VERDICT: YES" in capsys.readouterr().out
    assert main(["oracle", fixture_path("path3.dg"), pattern_file]) == EXIT_NO


def test_breakability_command(capsys):
    assert main(["breakability", fixture_path("path3.dg"), "--w", "0"]) == EXIT_YES
    assert capsys.readouterr().out.startswith("breakability=")


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.dg"
    bad.write_text("digraph n=2\n0 5\n")
    code = main(["validate-decomp", str(bad), fixture_path("path3.dec")])
    err = capsys.readouterr().err
    assert code == EXIT_ERROR
    assert "bad.dg" in err


def test_argparse_errors_become_exit_codes(capsys):
    assert main(["solve-saddp"]) == EXIT_ERROR
    assert main(["--help"]) == EXIT_YES
    capsys.readouterr()

import pytest

from src.errors import ParseError
from src.graph.digraph import from_arc_list
from src.graph.pattern import Embedding, PatternPath, Star, StarsPathsPattern
from src.persistence import formats
from src.reductions.sat22 import Formula

from .conftest import fixture_path


def _read(name):
    return formats.read_text(fixture_path(name))


# ----- Digraph -----

def test_fixture_digraph_canonical_form(triangles7):
    text = formats.format_digraph(triangles7)
    assert text.splitlines()[0] == "digraph n=7 loops=0"
    assert text.endswith("\n")
    assert formats.parse_digraph(text) == triangles7
    assert formats.format_digraph(formats.parse_digraph(text)) == text


def test_digraph_with_loops():
    d = formats.parse_digraph("digraph n=2 loops=1\n0 0\n0 1\n")
    assert d.loops() == [0]
    assert formats.format_digraph(d) == "digraph n=2 loops=1\n0 0\n0 1\n"


@pytest.mark.parametrize("text, line, fragment", [
    ("", 0, "missing 'digraph' header"),
    ("graph n=2\n", 1, "expected 'digraph' header"),
    ("digraph loops=0\n", 1, "header lacks 'n='"),
    ("digraph n=2 loops=2\n", 1, "loops must be 0 or 1"),
    ("digraph n=2\n0 1\n0 x\n", 3, "expected an integer"),
    ("digraph n=2\n0 1\n\n0 1\n", 4, "duplicate arc 0 1 (first on line 2)"),
    ("digraph n=2\n# note\n1 1\n", 3, "loop on 1 but loops=0"),
    ("digraph n=2\n0 2\n", 2, "vertex id out of range"),
    ("digraph n=2\n0 1 1\n", 2, "exactly two vertex ids"),
])
def test_digraph_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        formats.parse_digraph(text, "host.dg")
    assert info.value.line == line
    assert info.value.path == "host.dg"
    assert fragment in info.value.message


def test_missing_file_is_parse_error(tmp_path):
    with pytest.raises(ParseError) as info:
        formats.read_text(str(tmp_path / "absent.dg"))
    assert info.value.line == 0


# ----- Decomposition -----

def test_decomposition_fixture(triangles7_dec):
    assert triangles7_dec.nodes == 4
    assert triangles7_dec.bags[1] == [1, 2]
    assert triangles7_dec.edge_to(1).guard == [1, 2]
    text = formats.format_decomposition(triangles7_dec)
    assert formats.parse_decomposition(text) == triangles7_dec


def test_empty_guard_written_and_read():
    text = _read("path3.dec")
    dec = formats.parse_decomposition(text)
    assert [e.guard for e in dec.edges] == [[], []]
    assert "edge 0 1 guard\n" in formats.format_decomposition(dec)


@pytest.mark.parametrize("text, line", [
    ("arboreal nodes=1 root=0\nbag 0 0\nbag 0 1\n", 3),
    ("arboreal nodes=2 root=0\nbag 0 0\nbag 1 1\nedge 0 1 0\n", 4),
    ("arboreal nodes=1 root=0\nleaf 0 0\n", 2),
    ("arboreal nodes=2 root=0\nbag 0 0\nbag 1 1\n", 0),
])
def test_decomposition_errors(text, line):
    with pytest.raises(ParseError) as info:
        formats.parse_decomposition(text)
    assert info.value.line == line


# ----- SADDP -----

def test_saddp_fixture(path3):
    inst = formats.parse_saddp(_read("path3_blocked.saddp"), path3)
    assert inst.triples() == [(0, 2, 3)]
    assert inst.avoid_sets == [[1]] and inst.budgets == [0]
    text = formats.format_saddp(inst)
    assert text == "saddp r=1 k=1\nreq 0 2 3\nset 0 budget=0 : 1\n"


@pytest.mark.parametrize("text, line, fragment", [
    ("saddp r=2 k=0\nreq 0 2 3\n", 1, "header says r=2"),
    ("saddp r=0 k=1\n", 1, "header says k=1"),
    ("saddp r=1 k=0\nreq 0 0 2\n", 2, "cycle of at least 3 vertices"),
    ("saddp r=0 k=1\nset 0 0 : 1\n", 2, "expected 'set"),
    ("saddp r=1 k=0\nreq 0 9 3\n", 0, "leaves the digraph"),
])
def test_saddp_errors(path3, text, line, fragment):
    with pytest.raises(ParseError) as info:
        formats.parse_saddp(text, path3)
    assert info.value.line == line
    assert fragment in info.value.message


# ----- Pattern -----

def test_pattern_text():
    pattern = StarsPathsPattern(stars=[Star(out_leaves=1), Star(in_leaves=2)],
                                paths=[PatternPath(source=0, target=1, vertex_count=3)],
                                roots=[4, 2])
    text = formats.format_pattern(pattern)
    assert text == "pattern k=2\nstar 0 out=1 in=0\nstar 1 out=0 in=2\npath 0 1 len=3\nroots 4 2\n"
    assert formats.parse_pattern(text) == pattern


@pytest.mark.parametrize("text, line", [
    ("pattern k=2\nstar 0 out=1 in=0\n", 1),
    ("pattern k=1\nstar 0 out=1\n", 2),
    ("pattern k=1\nstar 0 out=1 in=0\npath 0 0 len=2\n", 0),
    ("pattern k=1\nstar 0 out=-1 in=0\n", 2),
    ("pattern k=1\nstar 0 out=0 in=0\nroots 1\nroots 2\n", 4),
])
def test_pattern_errors(text, line):
    with pytest.raises(ParseError) as info:
        formats.parse_pattern(text)
    assert info.value.line == line


# ----- Sidecar and source problems -----

def test_roles_sidecar():
    text = formats.format_roles({2: "type1", 0: "original"}, {"k": 3}, (0, 2))
    assert text == "# role 0 original\n# role 2 type1\n# param k 3\n# terminals 0 2\n"
    notes = formats.parse_roles(text)
    assert notes.roles == {0: "original", 2: "type1"}
    assert notes.params == {"k": 3} and notes.terminals == (0, 2)
    with pytest.raises(ParseError) as info:
        formats.parse_roles("# role 0 original\nrole 1 x\n")
    assert info.value.line == 2


def test_graph_input():
    g = formats.parse_graph("graph n=3 k=3\n0 1\n2 1\nterminals 0 2\npair 0 1 1 2\n")
    assert g.edges == [(0, 1), (2, 1)] and g.k == 3
    assert g.terminals == (0, 2) and g.pairs == [((0, 1), (1, 2))]
    assert formats.format_graph(g) == "graph n=3 k=3\n0 1\n1 2\nterminals 0 2\npair 0 1 1 2\n"
    with pytest.raises(ParseError):
        formats.parse_graph("graph n=2\n1 1\n")


def test_bipartite_text():
    text = "bipartite left=2 right=2\nedge 0 0\nedge 1 1\nleft-part 0\nleft-part 1\nright-part 0 1\n"
    inst = formats.parse_bipartite(text)
    assert inst.right_parts == [[0, 1]]
    assert formats.format_bipartite(inst) == text
    with pytest.raises(ParseError):
        formats.parse_bipartite("bipartite left=1 right=1\nedge 0 5\n")


def test_dimacs_fixture():
    formula = formats.parse_dimacs(_read("two_two.cnf"))
    assert formula == Formula(variables=3, clauses=[[1, 2, 3], [1, -2, -3], [-1, 2, -3], [-1, -2, 3]])
    formula.check_two_two()
    assert formats.parse_dimacs(formats.format_dimacs(formula)) == formula


@pytest.mark.parametrize("text", ["1 2 0\n", "p cnf 2 2\n1 2 0\n", "p cnf 1 1\n2 0\n", "p dnf 1 1\n"])
def test_dimacs_errors(text):
    with pytest.raises(ParseError):
        formats.parse_dimacs(text)


def test_embedding_lines():
    emb = Embedding(star_centers=[0, 3], star_leaves=[[1], []], path_vertices=[[0, 2, 3]])
    assert formats.format_embedding(emb) == [
        "star 0 center 0 leaves 1", "star 1 center 3 leaves", "path 0 0 2 3"]
    mapped = Embedding(vertex_map={1: 4, 0: 2})
    assert formats.format_embedding(mapped) == ["map 0 2", "map 1 4"]


def test_writer_creates_directories(tmp_path):
    target = tmp_path / "nested" / "host.dg"
    formats.write_text(str(target), formats.format_digraph(from_arc_list(2, [(0, 1)])))
    assert target.read_text() == "digraph n=2 loops=0\n0 1\n"

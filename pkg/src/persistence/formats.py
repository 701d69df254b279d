"""
Text formats: parsers with line-numbered errors and canonical writers.

Every writer is byte-stable (sorted, single spaces, trailing newline) and
its output parses back to an equal value.
"""

from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple, TypeVar

from pydantic import BaseModel, Field, ValidationError

from ..decomp.arboreal import ArborealDecomposition, TreeEdge
from ..errors import DuplicateArc, LoopForbidden, BadVertexId, ParseError
from ..graph.digraph import Digraph, from_arc_list
from ..graph.pattern import Embedding, PatternPath, Star, StarsPathsPattern
from ..pipeline.saddp import Request, SaddpInstance
from ..reductions.consistent_matching import BipartiteInstance
from ..reductions.sat22 import Formula

T = TypeVar("T")
Line = Tuple[int, List[str]]


# ----- Helpers -----

def _lines(text: str) -> Iterator[Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped.split()


def _int(token: str, path: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(path, line, f"expected an integer, got '{token}'") from None


def _keyvals(tokens: List[str], path: str, line: int) -> Dict[str, int]:
    out = {}
    for token in tokens:
        if "=" not in token:
            raise ParseError(path, line, f"expected key=value, got '{token}'")
        key, value = token.split("=", 1)
        out[key] = _int(value, path, line)
    return out


def _header(lines: List[Line], keyword: str, required: List[str], path: str) -> Dict[str, int]:
    if not lines:
        raise ParseError(path, 0, f"missing '{keyword}' header")
    number, tokens = lines[0]
    if tokens[0] != keyword:
        raise ParseError(path, number, f"expected '{keyword}' header, got '{tokens[0]}'")
    values = _keyvals(tokens[1:], path, number)
    for key in required:
        if key not in values:
            raise ParseError(path, number, f"header lacks '{key}='")
    return values


def _build(factory: Callable[[], T], path: str, line: int = 0) -> T:
    """Run a constructor and turn validation failures into ParseError."""
    try:
        return factory()
    except ValidationError as exc:
        message = "; ".join(err["msg"] for err in exc.errors())
        raise ParseError(path, line, message) from None
    except (DuplicateArc, LoopForbidden, BadVertexId, ValueError) as exc:
        raise ParseError(path, line, str(exc)) from None


def read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(path, 0, f"cannot read file: {exc.strerror}") from None


def write_text(path: str, text: str) -> str:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding="utf-8")
    return path


# ----- Digraph -----

def parse_digraph(text: str, path: str = "<string>") -> Digraph:
    lines = list(_lines(text))
    head = _header(lines, "digraph", ["n"], path)
    loops = head.get("loops", 0)
    if loops not in (0, 1):
        raise ParseError(path, lines[0][0], "loops must be 0 or 1")
    arcs = []
    seen = {}
    for number, tokens in lines[1:]:
        if len(tokens) != 2:
            raise ParseError(path, number, "arc lines hold exactly two vertex ids")
        u, v = _int(tokens[0], path, number), _int(tokens[1], path, number)
        if not (0 <= u < head["n"] and 0 <= v < head["n"]):
            raise ParseError(path, number, f"vertex id out of range in arc {u} {v}")
        if (u, v) in seen:
            raise ParseError(path, number, f"duplicate arc {u} {v} (first on line {seen[(u, v)]})")
        if u == v and not loops:
            raise ParseError(path, number, f"loop on {u} but loops=0")
        seen[(u, v)] = number
        arcs.append((u, v))
    return _build(lambda: from_arc_list(head["n"], arcs, allow_loops=bool(loops)), path)


def format_digraph(d: Digraph) -> str:
    out = [f"digraph n={d.n} loops={int(d.allow_loops)}"]
    out.extend(f"{u} {v}" for u, v in d.sorted_arcs())
    return "\n".join(out) + "\n"


# ----- Arboreal decomposition -----

def parse_decomposition(text: str, path: str = "<string>") -> ArborealDecomposition:
    lines = list(_lines(text))
    head = _header(lines, "arboreal", ["nodes", "root"], path)
    bags: Dict[int, List[int]] = {}
    edges: List[TreeEdge] = []
    for number, tokens in lines[1:]:
        kind = tokens[0]
        if kind == "bag":
            if len(tokens) < 2:
                raise ParseError(path, number, "bag line needs a node id")
            node = _int(tokens[1], path, number)
            if node in bags:
                raise ParseError(path, number, f"bag {node} given twice")
            bags[node] = [_int(t, path, number) for t in tokens[2:]]
        elif kind == "edge":
            if len(tokens) < 4 or tokens[3] != "guard":
                raise ParseError(path, number, "expected 'edge <parent> <child> guard <v...>'")
            edges.append(TreeEdge(parent=_int(tokens[1], path, number), child=_int(tokens[2], path, number),
                                  guard=[_int(t, path, number) for t in tokens[4:]]))
        else:
            raise ParseError(path, number, f"unknown line kind '{kind}'")
    return _build(lambda: ArborealDecomposition(nodes=head["nodes"], root=head["root"], bags=bags,
                                                edges=edges), path)


def format_decomposition(dec: ArborealDecomposition) -> str:
    out = [f"arboreal nodes={dec.nodes} root={dec.root}"]
    for node in sorted(dec.bags):
        out.append(" ".join(["bag", str(node)] + [str(v) for v in sorted(dec.bags[node])]))
    for e in sorted(dec.edges, key=lambda e: (e.parent, e.child)):
        out.append(" ".join(["edge", str(e.parent), str(e.child), "guard"] + [str(v) for v in sorted(e.guard)]))
    return "\n".join(out) + "\n"


# ----- SADDP instance -----

def parse_saddp(text: str, d: Digraph, path: str = "<string>") -> SaddpInstance:
    lines = list(_lines(text))
    head = _header(lines, "saddp", ["r", "k"], path)
    requests: List[Request] = []
    sets: Dict[int, Tuple[int, List[int]]] = {}
    for number, tokens in lines[1:]:
        kind = tokens[0]
        if kind == "req":
            if len(tokens) != 4:
                raise ParseError(path, number, "expected 'req <s> <t> <p>'")
            s, t, p = (_int(x, path, number) for x in tokens[1:])
            requests.append(_build(lambda: Request(source=s, target=t, size=p), path, number))
        elif kind == "set":
            if len(tokens) < 4 or not tokens[2].startswith("budget=") or tokens[3] != ":":
                raise ParseError(path, number, "expected 'set <i> budget=<x> : <v...>'")
            index = _int(tokens[1], path, number)
            budget = _keyvals([tokens[2]], path, number)["budget"]
            if index in sets:
                raise ParseError(path, number, f"avoid set {index} given twice")
            sets[index] = (budget, [_int(t, path, number) for t in tokens[4:]])
        else:
            raise ParseError(path, number, f"unknown line kind '{kind}'")
    if len(requests) != head["r"]:
        raise ParseError(path, lines[0][0], f"header says r={head['r']}, found {len(requests)} requests")
    if sorted(sets) != list(range(head["k"])):
        raise ParseError(path, lines[0][0], f"header says k={head['k']}, sets are {sorted(sets)}")
    avoid = [sets[i][1] for i in range(head["k"])]
    budgets = [sets[i][0] for i in range(head["k"])]
    return _build(lambda: SaddpInstance(d=d, requests=requests, avoid_sets=avoid, budgets=budgets), path)


def format_saddp(inst: SaddpInstance) -> str:
    out = [f"saddp r={len(inst.requests)} k={len(inst.avoid_sets)}"]
    out.extend(f"req {r.source} {r.target} {r.size}" for r in inst.requests)
    for i, (x, b) in enumerate(zip(inst.avoid_sets, inst.budgets)):
        out.append(" ".join([f"set {i} budget={b} :"] + [str(v) for v in sorted(x)]))
    return "\n".join(out) + "\n"


# ----- Stars-paths pattern -----

def parse_pattern(text: str, path: str = "<string>") -> StarsPathsPattern:
    lines = list(_lines(text))
    head = _header(lines, "pattern", ["k"], path)
    stars: Dict[int, Star] = {}
    paths: List[PatternPath] = []
    roots: Optional[List[int]] = None
    for number, tokens in lines[1:]:
        kind = tokens[0]
        if kind == "star":
            if len(tokens) != 4:
                raise ParseError(path, number, "expected 'star <i> out=<int> in=<int>'")
            index = _int(tokens[1], path, number)
            counts = _keyvals(tokens[2:], path, number)
            if set(counts) != {"out", "in"}:
                raise ParseError(path, number, "star lines need out= and in=")
            if index in stars:
                raise ParseError(path, number, f"star {index} given twice")
            stars[index] = _build(lambda: Star(out_leaves=counts["out"], in_leaves=counts["in"]), path, number)
        elif kind == "path":
            if len(tokens) != 4 or not tokens[3].startswith("len="):
                raise ParseError(path, number, "expected 'path <i> <j> len=<vertex_count>'")
            s, t = _int(tokens[1], path, number), _int(tokens[2], path, number)
            size = _keyvals([tokens[3]], path, number)["len"]
            paths.append(_build(lambda: PatternPath(source=s, target=t, vertex_count=size), path, number))
        elif kind == "roots":
            if roots is not None:
                raise ParseError(path, number, "roots given twice")
            roots = [_int(t, path, number) for t in tokens[1:]]
        else:
            raise ParseError(path, number, f"unknown line kind '{kind}'")
    if sorted(stars) != list(range(head["k"])):
        raise ParseError(path, lines[0][0], f"header says k={head['k']}, stars are {sorted(stars)}")
    return _build(lambda: StarsPathsPattern(stars=[stars[i] for i in range(head["k"])],
                                            paths=paths, roots=roots), path)


def format_pattern(pattern: StarsPathsPattern) -> str:
    out = [f"pattern k={pattern.k}"]
    out.extend(f"star {i} out={s.out_leaves} in={s.in_leaves}" for i, s in enumerate(pattern.stars))
    out.extend(f"path {p.source} {p.target} len={p.vertex_count}" for p in pattern.paths)
    if pattern.roots is not None:
        out.append(" ".join(["roots"] + [str(v) for v in pattern.roots]))
    return "\n".join(out) + "\n"


# ----- Roles sidecar -----

class Annotations(BaseModel):
    roles: Dict[int, str] = Field(default_factory=dict)
    params: Dict[str, int] = Field(default_factory=dict)
    terminals: Optional[Tuple[int, int]] = None


def parse_roles(text: str, path: str = "<string>") -> Annotations:
    notes = Annotations()
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        if tokens[0] != "#" or len(tokens) < 2:
            raise ParseError(path, number, "sidecar lines start with '# role', '# param' or '# terminals'")
        kind, rest = tokens[1], tokens[2:]
        if kind == "role" and len(rest) == 2:
            notes.roles[_int(rest[0], path, number)] = rest[1]
        elif kind == "param" and len(rest) == 2:
            notes.params[rest[0]] = _int(rest[1], path, number)
        elif kind == "terminals" and len(rest) == 2:
            notes.terminals = (_int(rest[0], path, number), _int(rest[1], path, number))
        else:
            raise ParseError(path, number, f"malformed sidecar line '{raw.strip()}'")
    return notes


def format_roles(roles: Dict[int, str], params: Optional[Dict[str, int]] = None,
                 terminals: Optional[Tuple[int, int]] = None) -> str:
    out = [f"# role {v} {roles[v]}" for v in sorted(roles)]
    out.extend(f"# param {key} {value}" for key, value in sorted((params or {}).items()))
    if terminals is not None:
        out.append(f"# terminals {terminals[0]} {terminals[1]}")
    return "\n".join(out) + "\n"


# ----- Source problems -----

class GraphInput(BaseModel):
    """Undirected graph with the optional extras of the clique and antidirected constructions."""

    n: int = Field(ge=0)
    edges: List[Tuple[int, int]] = Field(default_factory=list)
    k: Optional[int] = None
    terminals: Optional[Tuple[int, int]] = None
    pairs: List[Tuple[Tuple[int, int], Tuple[int, int]]] = Field(default_factory=list)


def parse_graph(text: str, path: str = "<string>") -> GraphInput:
    lines = list(_lines(text))
    head = _header(lines, "graph", ["n"], path)
    edges, pairs = [], []
    terminals = None
    for number, tokens in lines[1:]:
        if tokens[0] == "terminals":
            if len(tokens) != 3:
                raise ParseError(path, number, "expected 'terminals <s> <t>'")
            terminals = (_int(tokens[1], path, number), _int(tokens[2], path, number))
        elif tokens[0] == "pair":
            if len(tokens) != 5:
                raise ParseError(path, number, "expected 'pair <u1> <v1> <u2> <v2>'")
            a, b, c, e = (_int(t, path, number) for t in tokens[1:])
            pairs.append(((a, b), (c, e)))
        elif len(tokens) == 2:
            u, v = _int(tokens[0], path, number), _int(tokens[1], path, number)
            if not (0 <= u < head["n"] and 0 <= v < head["n"]) or u == v:
                raise ParseError(path, number, f"bad edge {u} {v}")
            edges.append((u, v))
        else:
            raise ParseError(path, number, "expected an edge '<u> <v>', 'terminals' or 'pair'")
    return GraphInput(n=head["n"], edges=edges, k=head.get("k"), terminals=terminals, pairs=pairs)


def format_graph(g: GraphInput) -> str:
    head = f"graph n={g.n}" + (f" k={g.k}" if g.k is not None else "")
    out = [head]
    out.extend(f"{u} {v}" for u, v in sorted((min(e), max(e)) for e in g.edges))
    if g.terminals is not None:
        out.append(f"terminals {g.terminals[0]} {g.terminals[1]}")
    out.extend(f"pair {e[0]} {e[1]} {f[0]} {f[1]}" for e, f in g.pairs)
    return "\n".join(out) + "\n"


def parse_bipartite(text: str, path: str = "<string>") -> BipartiteInstance:
    lines = list(_lines(text))
    head = _header(lines, "bipartite", ["left", "right"], path)
    edges, left_parts, right_parts = [], [], []
    for number, tokens in lines[1:]:
        kind = tokens[0]
        values = [_int(t, path, number) for t in tokens[1:]]
        if kind == "edge" and len(values) == 2:
            edges.append((values[0], values[1]))
        elif kind == "left-part" and values:
            left_parts.append(values)
        elif kind == "right-part" and values:
            right_parts.append(values)
        else:
            raise ParseError(path, number, f"malformed line '{' '.join(tokens)}'")
    return _build(lambda: BipartiteInstance(left=head["left"], right=head["right"], edges=edges,
                                            left_parts=left_parts, right_parts=right_parts), path)


def format_bipartite(inst: BipartiteInstance) -> str:
    out = [f"bipartite left={inst.left} right={inst.right}"]
    out.extend(f"edge {i} {j}" for i, j in inst.edges)
    out.extend(" ".join(["left-part"] + [str(v) for v in part]) for part in inst.left_parts)
    out.extend(" ".join(["right-part"] + [str(v) for v in part]) for part in inst.right_parts)
    return "\n".join(out) + "\n"


def parse_dimacs(text: str, path: str = "<string>") -> Formula:
    header: Optional[Tuple[int, int]] = None
    clauses: List[List[int]] = []
    current: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise ParseError(path, number, "expected 'p cnf <vars> <clauses>'")
            header = (_int(tokens[2], path, number), _int(tokens[3], path, number))
            continue
        if header is None:
            raise ParseError(path, number, "clause before the 'p cnf' line")
        for token in tokens:
            lit = _int(token, path, number)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if header is None:
        raise ParseError(path, 0, "missing 'p cnf' line")
    if current:
        clauses.append(current)
    if len(clauses) != header[1]:
        raise ParseError(path, 0, f"header says {header[1]} clauses, found {len(clauses)}")
    return _build(lambda: Formula(variables=header[0], clauses=clauses), path)


def format_dimacs(formula: Formula) -> str:
    out = [f"p cnf {formula.variables} {len(formula.clauses)}"]
    out.extend(" ".join(str(x) for x in clause) + " 0" for clause in formula.clauses)
    return "\n".join(out) + "\n"


# ----- Reports -----

def format_embedding(emb: Embedding) -> List[str]:
    """Witness lines: 'star <i> center <v> leaves <...>' then 'path <i> <v...>'."""
    lines = []
    for i, center in enumerate(emb.star_centers):
        leaves = emb.star_leaves[i] if i < len(emb.star_leaves) else []
        lines.append(" ".join([f"star {i} center {center} leaves"] + [str(v) for v in leaves]).rstrip())
    for i, seq in enumerate(emb.path_vertices):
        lines.append(" ".join([f"path {i}"] + [str(v) for v in seq]))
    if not emb.star_centers and emb.vertex_map:
        lines.extend(f"map {x} {emb.vertex_map[x]}" for x in sorted(emb.vertex_map))
    return lines

"""
Command-line front end.

Exit codes: 0 positive instance or valid input, 1 negative instance or
invalid input (certificate printed), 2 usage, parse or capacity error.
The report goes to stdout; diagnostics go to stderr.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

from ..config import (
    BREAKABILITY_MAX_VERTICES,
    N_JOBS,
    ORACLE_PATTERN_CAP,
    OUTPUT_DIR,
    SADDP_ORACLE_MAX_VERTICES,
)
from ..decomp.arboreal import check_decomposition
from ..decomp.breakability import breakability
from ..errors import (
    InvalidDecomposition,
    NoDecomposition,
    ParseError,
    PatternTooLarge,
    SolverInvariantError,
    TooLarge,
)
from ..graph.digraph import Digraph
from ..graph.oracle import oracle_find_pattern
from ..graph.pattern import Embedding, StarsPathsPattern
from ..graph.traversal import is_dag
from ..persistence import formats
from ..persistence.store import InstanceStore
from ..pipeline.rspsi import RspsiInstance, resolve_decomposition, solve_rooted, solve_unrooted
from ..pipeline.saddp import oracle_saddp
from ..pipeline.saddp_solver import solve_saddp
from ..pipeline.special_cases import (
    disjoint_arcs_pattern,
    find_disjoint_arcs,
    find_once_subdivided_star,
    once_subdivided_star_pattern,
)
from ..reductions import random_instances
from ..reductions.antidirected import gen_antidirected, has_antidirected_path, has_pair_avoiding_path
from ..reductions.base import ReductionOutput
from ..reductions.clique import gen_clique_to_expansion, has_clique
from ..reductions.consistent_matching import (
    covering_matching,
    gen_caterpillar,
    gen_matching_to_stars,
    gen_matching_to_stars_plus_bigstar,
    has_consistent_perfect_matching,
)
from ..reductions.expansion import expansion_output
from ..reductions.sat22 import gen_sat22, is_satisfiable

logger = logging.getLogger(__name__)

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

GEN_KINDS = ['clique', 'antidirected', 'matching', 'bigstar', 'sat22', 'caterpillar', 'expansion']
# a copy of the target implies a source witness, not conversely
ONE_WAY_KINDS = {'clique'}


class UsageError(Exception):
    """Bad flag combination detected after argparse."""


def _verdict(found: bool) -> int:
    print(f"VERDICT: {'YES' if found else 'NO'}")
    return EXIT_YES if found else EXIT_NO


def _read_digraph(path: str) -> Digraph:
    return formats.parse_digraph(formats.read_text(path), path)


def _read_decomposition(path: Optional[str]):
    if path is None:
        return None
    return formats.parse_decomposition(formats.read_text(path), path)


def _read_target(path: str):
    """Pattern or digraph, told apart by the header keyword."""
    text = formats.read_text(path)
    for raw in text.splitlines():
        tokens = raw.split()
        if tokens and not tokens[0].startswith("#"):
            if tokens[0] == "pattern":
                return formats.parse_pattern(text, path)
            return formats.parse_digraph(text, path)
    raise ParseError(path, 0, "empty target file")


def _print_embedding(emb: Embedding) -> None:
    for line in formats.format_embedding(emb):
        print(line)


# ----- solve-rspsi -----

def _special_search(d: Digraph, args) -> int:
    if args.l is None:
        raise UsageError("--special needs --l")
    if args.special == 'arcs':
        emb = find_disjoint_arcs(d, args.l)
        pattern = disjoint_arcs_pattern(args.l) if args.l > 0 else None
        hits = [('arcs', emb, pattern)]
    else:
        orientations = ['out', 'in'] if args.orientation == 'both' else [args.orientation]
        hits = [(o, find_once_subdivided_star(d, args.l, o), once_subdivided_star_pattern(args.l, o))
                for o in orientations]
    if args.oracle_check:
        for label, emb, pattern in hits:
            if pattern is not None:
                _oracle_agrees(d, pattern, emb is not None, args.cap, label)
    code = _verdict(any(emb is not None for _, emb, _ in hits))
    for label, emb, _ in hits:
        if len(hits) > 1:
            print(f"orientation {label}: {'YES' if emb is not None else 'NO'}")
        if emb is not None:
            _print_embedding(emb)
    return code


def _oracle_agrees(d: Digraph, target, found: bool, cap: int, label: str = "") -> None:
    try:
        expected = oracle_find_pattern(d, target, cap=cap)
    except PatternTooLarge:
        print(f"oracle-check skipped{' for ' + label if label else ''}: target above cap {cap}", file=sys.stderr)
        return
    if (expected is not None) != found:
        raise SolverInvariantError(f"oracle disagrees{' for ' + label if label else ''}: "
                                   f"oracle={'YES' if expected is not None else 'NO'}")
    print("oracle-check: agree", file=sys.stderr)


def cmd_solve_rspsi(args) -> int:
    d = _read_digraph(args.host)
    if args.special:
        return _special_search(d, args)
    if args.pattern is None:
        raise UsageError("solve-rspsi needs a pattern file unless --special is given")
    pattern = formats.parse_pattern(formats.read_text(args.pattern), args.pattern)
    dec = _read_decomposition(args.decomp)
    if pattern.roots is not None:
        emb = solve_rooted(RspsiInstance(d=d, pattern=pattern, decomposition=dec))
    else:
        emb = solve_unrooted(d, pattern, dec, n_jobs=args.n_jobs)
    if args.oracle_check:
        _oracle_agrees(d, pattern, emb is not None, args.cap)
    code = _verdict(emb is not None)
    if emb is not None:
        _print_embedding(emb)
    return code


# ----- solve-saddp -----

def cmd_solve_saddp(args) -> int:
    d = _read_digraph(args.host)
    inst = formats.parse_saddp(formats.read_text(args.instance), d, args.instance)
    dec = resolve_decomposition(d, _read_decomposition(args.decomp))
    sol = solve_saddp(inst, dec)
    if args.oracle_check:
        try:
            expected = oracle_saddp(inst, max_vertices=args.cap)
        except TooLarge:
            print(f"oracle-check skipped: instance above cap {args.cap}", file=sys.stderr)
        else:
            if (expected is None) != (sol is None):
                raise SolverInvariantError(
                    f"oracle disagrees: oracle={'YES' if expected is not None else 'NO'}")
            print("oracle-check: agree", file=sys.stderr)
    code = _verdict(sol is not None)
    if sol is not None:
        for i, seq in enumerate(sol.paths):
            print(" ".join([f"path {i}"] + [str(v) for v in seq]))
    return code


# ----- validate-decomp -----

def cmd_validate_decomp(args) -> int:
    d = _read_digraph(args.host)
    dec = _read_decomposition(args.decomp)
    report = check_decomposition(d, dec)
    code = _verdict(report.valid)
    if report.valid:
        print(f"width={report.width}")
    elif report.edge is not None:
        walk = " ".join(str(v) for v in report.walk) if report.walk else ""
        print(f"violation edge {report.edge[0]} {report.edge[1]} walk {walk}".rstrip())
    else:
        print(f"violation {report.error}")
    return code


# ----- breakability -----

def cmd_breakability(args) -> int:
    d = _read_digraph(args.host)
    vertices = args.vertices if args.vertices is not None else list(d.vertices())
    h_arcs = None
    if args.target_arcs is not None:
        h_arcs = _read_digraph(args.target_arcs).arcs
    value = breakability(d, vertices, args.w, h_arcs=h_arcs, max_vertices=args.cap)
    print(f"breakability={value}")
    return EXIT_YES


# ----- gen -----

def _random_source(kind: str, seed: int, size: int, k: int):
    rng = random_instances.make_rng(seed)
    if kind in ('clique', 'antidirected'):
        edges = random_instances.random_graph(size, rng=rng)
        terminals = (0, size - 1) if kind == 'antidirected' else None
        return formats.GraphInput(n=size, edges=edges, k=k, terminals=terminals)
    if kind in ('matching', 'bigstar', 'caterpillar'):
        return random_instances.random_bipartite(size, rng=rng)
    if kind == 'sat22':
        formula = random_instances.random_two_two_formula(size, rng=rng)
        if formula is None:
            raise UsageError(f"no random 3-SAT-(2,2) formula with {size} variables (need 4*size divisible by 3)")
        return formula
    return random_instances.random_dag(size, rng=rng)


def _read_source(kind: str, path: str):
    text = formats.read_text(path)
    if kind in ('clique', 'antidirected'):
        return formats.parse_graph(text, path)
    if kind in ('matching', 'bigstar', 'caterpillar'):
        return formats.parse_bipartite(text, path)
    if kind == 'sat22':
        return formats.parse_dimacs(text, path)
    return formats.parse_digraph(text, path)


def _generate(kind: str, source, k: Optional[int]) -> Tuple[ReductionOutput, Optional[bool]]:
    """Run the construction; the second value is the source-problem verdict (None when there is none)."""
    if kind == 'clique':
        k = k if k is not None else source.k
        if k is None:
            raise UsageError("clique needs k (header k= or --k)")
        return gen_clique_to_expansion(source.n, source.edges, k), has_clique(source.n, source.edges, k)
    if kind == 'antidirected':
        if source.terminals is None:
            raise UsageError("antidirected needs a 'terminals <s> <t>' line")
        s, t = source.terminals
        return (gen_antidirected(source.n, source.edges, s, t, source.pairs),
                has_pair_avoiding_path(source.n, source.edges, s, t, source.pairs))
    generators: Dict[str, Callable] = {
        'matching': gen_matching_to_stars,
        'bigstar': gen_matching_to_stars_plus_bigstar,
    }
    if kind in generators:
        return generators[kind](source), has_consistent_perfect_matching(source)
    if kind == 'caterpillar':
        return gen_caterpillar(source), covering_matching(source) is not None
    if kind == 'sat22':
        return gen_sat22(source), is_satisfiable(source)
    return expansion_output(source), None


def cmd_gen(args) -> int:
    if args.input is None and args.seed is None:
        raise UsageError("gen needs an input file or --seed")
    source = (_read_source(args.kind, args.input) if args.input is not None
              else _random_source(args.kind, args.seed, args.size, args.k if args.k is not None else 3))
    out, source_verdict = _generate(args.kind, source, args.k)
    store = InstanceStore(args.output)
    for path in store.save_output(out):
        print(f"wrote {path}")
    print(f"is_dag={'true' if is_dag(out.host) else 'false'}")
    print(f"vertices={out.host.n} arcs={out.host.arc_count()}")
    print(f"expected_dtw_bound={out.expected_dtw_bound}")
    if args.oracle_check and source_verdict is not None:
        if out.target is None:
            host_verdict = has_antidirected_path(out.host, *out.terminals)
        else:
            try:
                host_verdict = oracle_find_pattern(out.host, out.target, cap=args.cap) is not None
            except PatternTooLarge:
                print(f"oracle-check skipped: target above cap {args.cap}", file=sys.stderr)
                return EXIT_YES
        print(f"source={'YES' if source_verdict else 'NO'} host={'YES' if host_verdict else 'NO'}")
        missed = source_verdict and not host_verdict
        if host_verdict != source_verdict and not (missed and args.kind in ONE_WAY_KINDS):
            print("oracle-check: host and source verdicts disagree", file=sys.stderr)
            return EXIT_NO
        print("oracle-check: agree", file=sys.stderr)
    return EXIT_YES


# ----- oracle -----

def cmd_oracle(args) -> int:
    d = _read_digraph(args.host)
    target = _read_target(args.target)
    emb = oracle_find_pattern(d, target, cap=args.cap)
    code = _verdict(emb is not None)
    if emb is not None:
        _print_embedding(emb)
    return code


# ----- Parser -----

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stars-paths",
                                 description="Stars-paths subdigraph search on digraphs of small directed treewidth.")
    ap.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-rspsi", help="Find a stars-paths pattern (rooted when the file lists roots)")
    p.add_argument("host")
    p.add_argument("pattern", nargs="?")
    p.add_argument("--decomp", help="Arboreal decomposition of the host")
    p.add_argument("--special", choices=["arcs", "star"], help="Matching-based search instead of a pattern file")
    p.add_argument("--l", type=int, help="Number of arcs or spokes for --special")
    p.add_argument("--orientation", choices=["out", "in", "both"], default="out")
    p.add_argument("--oracle-check", action="store_true")
    p.add_argument("--cap", type=int, default=ORACLE_PATTERN_CAP, help="Oracle size cap")
    p.add_argument("--n-jobs", type=int, default=N_JOBS)
    p.set_defaults(handler=cmd_solve_rspsi)

    p = sub.add_parser("solve-saddp", help="Subset-avoiding disjoint paths")
    p.add_argument("host")
    p.add_argument("instance")
    p.add_argument("--decomp")
    p.add_argument("--oracle-check", action="store_true")
    p.add_argument("--cap", type=int, default=SADDP_ORACLE_MAX_VERTICES)
    p.set_defaults(handler=cmd_solve_saddp)

    p = sub.add_parser("validate-decomp", help="Check an arboreal decomposition and report its width")
    p.add_argument("host")
    p.add_argument("decomp")
    p.set_defaults(handler=cmd_validate_decomp)

    p = sub.add_parser("breakability", help="Max weak components of H inside a w-guarded set")
    p.add_argument("host")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--vertices", type=int, nargs="*", help="Vertex set of H (default: all)")
    p.add_argument("--target-arcs", help="Digraph file whose arcs form H (default: induced)")
    p.add_argument("--cap", type=int, default=BREAKABILITY_MAX_VERTICES)
    p.set_defaults(handler=cmd_breakability)

    p = sub.add_parser("gen", help="Run a hardness construction and write the instance files")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("input", nargs="?", help="Source instance file (graph, bipartite, DIMACS or digraph)")
    p.add_argument("-o", "--output", default=OUTPUT_DIR)
    p.add_argument("--k", type=int, help="Clique size (clique), default from the header")
    p.add_argument("--seed", type=int, help="Generate a random source instance instead of reading one")
    p.add_argument("--size", type=int, default=5, help="Size of the random source instance")
    p.add_argument("--oracle-check", action="store_true", help="Compare source and host verdicts")
    p.add_argument("--cap", type=int, default=ORACLE_PATTERN_CAP)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("oracle", help="Brute-force search for a pattern or digraph target")
    p.add_argument("host")
    p.add_argument("target")
    p.add_argument("--cap", type=int, default=ORACLE_PATTERN_CAP)
    p.set_defaults(handler=cmd_oracle)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_YES
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)
    try:
        return args.handler(args)
    except (ParseError, FileNotFoundError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (ValueError, NoDecomposition, InvalidDecomposition, TooLarge, PatternTooLarge) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except SolverInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
    return EXIT_ERROR

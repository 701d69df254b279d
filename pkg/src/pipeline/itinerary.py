"""
Itineraries: memoized answers to restricted SADDP questions inside a vertex set A.

An itinerary for A answers f_A(L, x): can the requests L (terminals in A,
sizes included in each request) be realized by paths inside d[A] whose
union uses at most x_j vertices of every avoid set X_j? Requests (v, v, 1)
stand for single-vertex paths. Answers are witness path lists (or None),
cached per canonical (L, x) key.
"""

import logging
from abc import ABC, abstractmethod
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from ..errors import ArcFromBToA
from ..graph.digraph import Digraph
from .saddp import SaddpInstance, Triple, route

logger = logging.getLogger(__name__)

Paths = Tuple[Tuple[int, ...], ...]


class RoutingContext:
    """Digraph and avoid sets shared by every itinerary of one solve."""

    def __init__(self, d: Digraph, avoid_sets: Sequence[Iterable[int]]):
        self.d = d
        self.avoid_sets: List[FrozenSet[int]] = [frozenset(x) for x in avoid_sets]
        self.membership: Dict[int, List[int]] = {}
        for j, x in enumerate(self.avoid_sets):
            for v in x:
                self.membership.setdefault(v, []).append(j)
        self.evaluations = 0

    @classmethod
    def from_instance(cls, inst: SaddpInstance) -> "RoutingContext":
        return cls(inst.d, inst.avoid_sets)

    def usage(self, vertices: Iterable[int]) -> List[int]:
        counts = [0] * len(self.avoid_sets)
        for v in vertices:
            for j in self.membership.get(v, ()):
                counts[j] += 1
        return counts


def _compositions(total: int, parts: Sequence[Tuple[int, int]]) -> Iterator[Tuple[int, ...]]:
    """Ways to write ``total`` as a sum of len(parts) integers with parts[i] = (low, high) bounds."""
    if not parts:
        if total == 0:
            yield ()
        return
    low, high = parts[0]
    rest_low = sum(lo for lo, _ in parts[1:])
    rest_high = sum(hi for _, hi in parts[1:])
    for value in range(max(low, total - rest_high), min(high, total - rest_low) + 1):
        for tail in _compositions(total - value, parts[1:]):
            yield (value,) + tail


class Itinerary(ABC):
    """Lazy memoized predicate f_A(L, x) over request lists inside ``vertices``."""

    kind = "itinerary"

    def __init__(self, ctx: RoutingContext, vertices: Iterable[int]):
        self.ctx = ctx
        self.vertices: FrozenSet[int] = frozenset(vertices)
        self.caps = tuple(len(x & self.vertices) for x in ctx.avoid_sets)
        self.table: Dict[Tuple[Tuple[Triple, ...], Tuple[int, ...]], Optional[Paths]] = {}

    def query(self, requests: Sequence[Triple], budgets: Sequence[int]) -> Optional[List[List[int]]]:
        """
        Answer f_A(requests, budgets).

        Returns:
            One path per request (input order), or None
        """
        if any(b < 0 for b in budgets):
            return None
        for s, t, p in requests:
            if s not in self.vertices or t not in self.vertices:
                return None
            if (s == t) != (p == 1):
                raise ValueError(f"Itineraries take open requests and (v, v, 1) only, got {(s, t, p)}")
        order = sorted(range(len(requests)), key=lambda i: requests[i])
        key_requests = tuple(requests[i] for i in order)
        key_budgets = tuple(min(b, c) for b, c in zip(budgets, self.caps))
        key = (key_requests, key_budgets)
        if key not in self.table:
            self.ctx.evaluations += 1
            found = self._evaluate(list(key_requests), list(key_budgets))
            self.table[key] = tuple(tuple(p) for p in found) if found is not None else None
        stored = self.table[key]
        if stored is None:
            return None
        result: List[List[int]] = [[] for _ in requests]
        for pos, i in enumerate(order):
            result[i] = list(stored[pos])
        return result

    def holds(self, requests: Sequence[Triple], budgets: Sequence[int]) -> bool:
        return self.query(requests, budgets) is not None

    @abstractmethod
    def _evaluate(self, requests: List[Triple], budgets: List[int]) -> Optional[List[List[int]]]:
        """Compute one table entry; requests are canonical, budgets capped."""


class BaseItinerary(Itinerary):
    """Exhaustive path search inside d[A]."""

    kind = "base"

    def _evaluate(self, requests, budgets):
        return route(self.ctx.d, self.vertices, requests, self.ctx.avoid_sets, budgets)


class SequentialItinerary(Itinerary):
    """
    Itinerary for A u B when no arc runs from B to A.

    A request from A to B leaves A through exactly one arc (a, b); a and b
    become virtual terminals of the two halves unless they are the request's
    own terminals.
    """

    kind = "sequential"

    def __init__(self, fa: Itinerary, fb: Itinerary):
        if fa.vertices & fb.vertices:
            raise ValueError("combine_sequential needs disjoint vertex sets")
        d = fa.ctx.d
        for u in fb.vertices:
            if d.out_neighbors(u) & fa.vertices:
                raise ArcFromBToA(f"Arc from {u} into the first set")
        super().__init__(fa.ctx, fa.vertices | fb.vertices)
        self.fa = fa
        self.fb = fb
        self.crossing_arcs = sorted((u, v) for u in fa.vertices for v in d.out_neighbors(u)
                                    if v in fb.vertices)

    def _evaluate(self, requests, budgets):
        a, b = self.fa.vertices, self.fb.vertices
        terminals = {v for s, t, _ in requests for v in (s, t)}
        inside_a, inside_b, crossing = [], [], []
        for i, (s, t, p) in enumerate(requests):
            if s in a and t in a:
                inside_a.append(i)
            elif s in b and t in b:
                inside_b.append(i)
            elif s in a and t in b:
                crossing.append(i)
            else:
                return None

        # candidate exits per crossing request: (tail in A, head in B, size of A part)
        def exits(i: int) -> List[Tuple[int, int, int]]:
            s, t, p = requests[i]
            options = []
            for ta, sb in self.crossing_arcs:
                if ta != s and ta in terminals:
                    continue
                if sb != t and sb in terminals:
                    continue
                low_a = 1 if ta == s else 2
                low_b = 1 if sb == t else 2
                for pa in range(low_a, p - low_b + 1):
                    if (ta == s) != (pa == 1) or (sb == t) != (p - pa == 1):
                        continue
                    options.append((ta, sb, pa))
            return options

        choices = [exits(i) for i in crossing]
        if any(not c for c in choices):
            return None

        def pick(pos: int, fresh: Set[int], chosen: List[Tuple[int, int, int]]):
            if pos == len(crossing):
                yield list(chosen)
                return
            s, t, _ = requests[crossing[pos]]
            for ta, sb, pa in choices[pos]:
                new = {v for v in (ta, sb) if v not in (s, t)}
                if new & fresh:
                    continue
                chosen.append((ta, sb, pa))
                yield from pick(pos + 1, fresh | new, chosen)
                chosen.pop()

        for chosen in pick(0, set(), []):
            reqs_a = [requests[i] for i in inside_a]
            reqs_b = [requests[i] for i in inside_b]
            for i, (ta, sb, pa) in zip(crossing, chosen):
                s, t, p = requests[i]
                reqs_a.append((s, ta, pa))
                reqs_b.append((sb, t, p - pa))
            if not self.fa.holds(reqs_a, budgets) or not self.fb.holds(reqs_b, budgets):
                continue
            found = self._split_budgets(reqs_a, reqs_b, budgets)
            if found is None:
                continue
            paths_a, paths_b = found
            result: List[Optional[List[int]]] = [None] * len(requests)
            for pos, i in enumerate(inside_a):
                result[i] = paths_a[pos]
            for pos, i in enumerate(inside_b):
                result[i] = paths_b[pos]
            offset_a, offset_b = len(inside_a), len(inside_b)
            for pos, i in enumerate(crossing):
                result[i] = paths_a[offset_a + pos] + paths_b[offset_b + pos]
            return result
        return None

    def _split_budgets(self, reqs_a, reqs_b, budgets):
        ranges = []
        for j, x in enumerate(budgets):
            cap_a, cap_b = self.fa.caps[j], self.fb.caps[j]
            if cap_b == 0:
                ranges.append([x])
            elif cap_a == 0:
                ranges.append([0])
            else:
                ranges.append(range(0, min(x, cap_a) + 1))
        for split in product(*ranges):
            paths_a = self.fa.query(reqs_a, list(split))
            if paths_a is None:
                continue
            paths_b = self.fb.query(reqs_b, [x - xa for x, xa in zip(budgets, split)])
            if paths_b is not None:
                return paths_a, paths_b
        return None


class SmallItinerary(Itinerary):
    """
    Itinerary for A u b with b small.

    Every path is guessed as an alternating skeleton of b-vertices and
    maximal pieces inside A; the pieces become the request list handed to
    the itinerary of A.
    """

    kind = "small"

    def __init__(self, fa: Itinerary, b: Iterable[int]):
        small = frozenset(b)
        if small & fa.vertices:
            raise ValueError("combine_small needs a set disjoint from the itinerary's vertices")
        super().__init__(fa.ctx, fa.vertices | small)
        self.fa = fa
        self.small = small

    def _skeletons(self, s: int, t: int, terminals: Set[int]) -> Iterator[List[Tuple]]:
        """Alternating skeletons from s to t: ('b', v) and ('A', u, v) segments."""
        d, a, small = self.ctx.d, self.fa.vertices, self.small

        def ok_inner(v: int) -> bool:
            return v not in terminals

        def from_b(y: int, used: FrozenSet[int], seq: List[Tuple]) -> Iterator[List[Tuple]]:
            if y == t:
                yield list(seq)
                return
            for z in sorted(d.out_neighbors(y) & small):
                if z in used:
                    continue
                if z == t or ok_inner(z):
                    yield from from_b(z, used | {z}, seq + [("b", z)])
            for u in sorted(d.out_neighbors(y) & a):
                if u == t:
                    yield seq + [("A", t, t)]
                    continue
                if not ok_inner(u):
                    continue
                yield from piece(u, used, seq)

        def piece(u: int, used: FrozenSet[int], seq: List[Tuple]) -> Iterator[List[Tuple]]:
            # u != t; the piece ends at t or at a vertex with an arc into b
            if t in a:
                yield seq + [("A", u, t)]
            for v in sorted(a):
                if v == t or (v != u and not ok_inner(v)):
                    continue
                for z in sorted(d.out_neighbors(v) & small):
                    if z in used:
                        continue
                    if z == t or ok_inner(z):
                        yield from from_b(z, used | {z}, seq + [("A", u, v), ("b", z)])

        if s in small:
            yield from from_b(s, frozenset([s]), [("b", s)])
        else:
            yield from piece(s, frozenset(), [])

    def _evaluate(self, requests, budgets):
        if not self.small:
            return self.fa.query(requests, budgets)
        terminals = {v for s, t, _ in requests for v in (s, t)}
        options: List[List[List[Tuple]]] = []
        for s, t, p in requests:
            if s == t:
                options.append([[("b", s)]] if s in self.small else [[("A", s, s)]])
                continue
            sk = [k for k in self._skeletons(s, t, terminals) if self._min_size(k) <= p]
            if not sk:
                return None
            options.append(sk)

        for combo in product(*options):
            if not self._consistent(combo, terminals):
                continue
            used_b = {seg[1] for sk in combo for seg in sk if seg[0] == "b"}
            usage = self.ctx.usage(used_b)
            rest = [x - u for x, u in zip(budgets, usage)]
            if any(r < 0 for r in rest):
                continue
            found = self._sizes(requests, combo, rest)
            if found is not None:
                return found
        return None

    @staticmethod
    def _min_size(skeleton: List[Tuple]) -> int:
        total = 0
        for seg in skeleton:
            if seg[0] == "b":
                total += 1
            else:
                total += 1 if seg[1] == seg[2] else 2
        return total

    @staticmethod
    def _explicit(skeleton: List[Tuple]) -> List[int]:
        out: List[int] = []
        for seg in skeleton:
            if seg[0] == "b":
                out.append(seg[1])
            else:
                out.append(seg[1])
                if seg[2] != seg[1]:
                    out.append(seg[2])
        return out

    def _consistent(self, combo, terminals) -> bool:
        """Explicit skeleton vertices: no repeats in a path, inner ones private and non-terminal."""
        seen_inner: Set[int] = set()
        for verts in (self._explicit(sk) for sk in combo):
            if len(set(verts)) != len(verts):
                return False
            for v in verts[1:-1]:
                if v in terminals or v in seen_inner:
                    return False
                seen_inner.add(v)
        return True

    def _sizes(self, requests, combo, rest):
        slots = []
        for (_, _, p), sk in zip(requests, combo):
            n_b = sum(1 for seg in sk if seg[0] == "b")
            bounds = []
            for seg in sk:
                if seg[0] == "A":
                    u, v = seg[1], seg[2]
                    bounds.append((1, 1) if u == v else (2, len(self.fa.vertices)))
            slots.append((p - n_b, bounds))
        per_request = [list(_compositions(total, bounds)) for total, bounds in slots]
        if any(not c for c in per_request):
            return None
        for sizes in product(*per_request):
            pieces = []
            for sk, sz in zip(combo, sizes):
                pos = 0
                for seg in sk:
                    if seg[0] == "A":
                        pieces.append((seg[1], seg[2], sz[pos]))
                        pos += 1
            paths_a = self.fa.query(pieces, rest)
            if paths_a is None:
                continue
            result = []
            cursor = 0
            for sk in combo:
                seq: List[int] = []
                for seg in sk:
                    if seg[0] == "b":
                        seq.append(seg[1])
                    else:
                        seq.extend(paths_a[cursor])
                        cursor += 1
                result.append(seq)
            return result
        return None


def _check_block(name: str, block: FrozenSet[int], limit: Optional[int]) -> None:
    if limit is not None and len(block) > limit:
        raise ValueError(f"{name} takes at most {limit} vertices, got {len(block)}")


def base_itinerary(inst_or_ctx, a: Iterable[int], w: Optional[int] = None) -> BaseItinerary:
    """
    Itinerary computed by exhaustive search inside d[a].

    Raises:
        ValueError: w is given and a has more than w + 1 vertices
    """
    block = frozenset(a)
    _check_block("base_itinerary", block, None if w is None else w + 1)
    ctx = inst_or_ctx if isinstance(inst_or_ctx, RoutingContext) else RoutingContext.from_instance(inst_or_ctx)
    return BaseItinerary(ctx, block)


def combine_sequential(fa: Itinerary, fb: Itinerary) -> SequentialItinerary:
    """
    Itinerary for A u B from itineraries of A and B, when no arc runs from B to A.

    Raises:
        ArcFromBToA: d has an arc from B into A
    """
    return SequentialItinerary(fa, fb)


def combine_small(fa: Itinerary, b: Iterable[int], w: Optional[int] = None) -> Itinerary:
    """
    Itinerary for A u b by guessing how paths cross the small set b.

    Bags and guards are absorbed in chunks of w + 1, so that is the bound
    enforced when w is given.

    Raises:
        ValueError: w is given and b has more than w + 1 vertices
    """
    small = frozenset(b)
    _check_block("combine_small", small, None if w is None else w + 1)
    if not small:
        return fa
    return SmallItinerary(fa, small)

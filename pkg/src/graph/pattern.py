"""
Stars-paths patterns, embeddings and the embedding validator
"""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .digraph import Arc, Digraph


class Star(BaseModel):
    """A star of the pattern: leaf counts on each side of its center."""

    model_config = ConfigDict(frozen=True)

    out_leaves: int = Field(0, ge=0)
    in_leaves: int = Field(0, ge=0)

    @property
    def leaves(self) -> int:
        return self.out_leaves + self.in_leaves


class PatternPath(BaseModel):
    """A path between two star centers, counted in vertices (endpoints included)."""

    model_config = ConfigDict(frozen=True)

    source: int = Field(ge=0)
    target: int = Field(ge=0)
    vertex_count: int = Field(ge=2)

    @property
    def is_closed(self) -> bool:
        return self.source == self.target

    @property
    def interior_count(self) -> int:
        return self.vertex_count - 1 if self.is_closed else self.vertex_count - 2


class StarsPathsPattern(BaseModel):
    """
    Target digraph made of k stars and paths between their centers.

    ``roots`` pins center i to host vertex roots[i] (rooted version).
    """

    model_config = ConfigDict(frozen=True)

    stars: List[Star]
    paths: List[PatternPath] = Field(default_factory=list)
    roots: Optional[List[int]] = None

    @model_validator(mode="after")
    def _check_shape(self) -> "StarsPathsPattern":
        k = len(self.stars)
        if k < 1:
            raise ValueError("A pattern needs at least one star")
        direct = set()
        for path in self.paths:
            if path.source >= k or path.target >= k:
                raise ValueError(f"Path {path.source}->{path.target} refers to a missing center")
            if path.is_closed and path.vertex_count < 3:
                raise ValueError("A path from a center to itself needs at least 3 vertices")
            if path.vertex_count == 2:
                if (path.source, path.target) in direct:
                    raise ValueError(f"Parallel arcs {path.source}->{path.target} in pattern")
                direct.add((path.source, path.target))
        if self.roots is not None:
            if len(self.roots) != k:
                raise ValueError(f"Expected {k} roots, got {len(self.roots)}")
            if len(set(self.roots)) != k:
                raise ValueError("Roots must be pairwise distinct")
            if any(r < 0 for r in self.roots):
                raise ValueError("Roots must be non-negative vertex ids")
        return self

    @property
    def k(self) -> int:
        return len(self.stars)

    @property
    def r(self) -> int:
        return len(self.paths)

    def vertex_count(self) -> int:
        return (self.k + sum(s.leaves for s in self.stars)
                + sum(p.interior_count for p in self.paths))

    def with_roots(self, roots: Optional[List[int]]) -> "StarsPathsPattern":
        return StarsPathsPattern(stars=list(self.stars), paths=list(self.paths),
                                 roots=list(roots) if roots is not None else None)


class Embedding(BaseModel):
    """
    A subdigraph of the host isomorphic to the target.

    ``star_leaves[i]`` lists the out-leaves of star i first, then its
    in-leaves. A closed path lists its center at both ends. For plain
    digraph targets only ``vertex_map`` (target vertex -> host vertex) is set.
    """

    star_centers: List[int] = Field(default_factory=list)
    star_leaves: List[List[int]] = Field(default_factory=list)
    path_vertices: List[List[int]] = Field(default_factory=list)
    vertex_map: Optional[Dict[int, int]] = None

    def used_vertices(self) -> List[int]:
        used = set(self.star_centers)
        for leaves in self.star_leaves:
            used.update(leaves)
        for seq in self.path_vertices:
            used.update(seq)
        if self.vertex_map:
            used.update(self.vertex_map.values())
        return sorted(used)


class PatternLayout(BaseModel):
    """Vertex ids of a pattern once flattened into a digraph."""

    centers: List[int]
    leaves: List[List[int]]
    interiors: List[List[int]]


def pattern_to_digraph(pattern: StarsPathsPattern) -> Tuple[Digraph, PatternLayout]:
    """
    Flatten a stars-paths pattern into a plain digraph.

    Centers get ids 0..k-1, then the leaves star by star (out-leaves first),
    then path interiors path by path.
    """
    k = pattern.k
    centers = list(range(k))
    arcs: List[Arc] = []
    nxt = k
    leaves: List[List[int]] = []
    for i, star in enumerate(pattern.stars):
        ids = list(range(nxt, nxt + star.leaves))
        nxt += star.leaves
        arcs.extend((i, v) for v in ids[:star.out_leaves])
        arcs.extend((v, i) for v in ids[star.out_leaves:])
        leaves.append(ids)
    interiors: List[List[int]] = []
    for path in pattern.paths:
        ids = list(range(nxt, nxt + path.interior_count))
        nxt += path.interior_count
        chain = [path.source] + ids + [path.target]
        arcs.extend(zip(chain, chain[1:]))
        interiors.append(ids)
    return Digraph(nxt, arcs), PatternLayout(centers=centers, leaves=leaves, interiors=interiors)


def embedding_from_map(pattern: StarsPathsPattern, layout: PatternLayout,
                       mapping: Dict[int, int]) -> Embedding:
    """Translate a pattern-digraph vertex map into a structured Embedding."""
    centers = [mapping[c] for c in layout.centers]
    leaves = [[mapping[v] for v in ids] for ids in layout.leaves]
    paths = []
    for path, ids in zip(pattern.paths, layout.interiors):
        paths.append([centers[path.source]] + [mapping[v] for v in ids] + [centers[path.target]])
    return Embedding(star_centers=centers, star_leaves=leaves, path_vertices=paths,
                     vertex_map=dict(mapping))


def validate_embedding(d: Digraph, pattern: StarsPathsPattern, emb: Embedding) -> List[str]:
    """
    Check an embedding against the host and the pattern.

    Returns:
        List of problems; empty when the embedding is valid
    """
    problems: List[str] = []
    k = pattern.k
    if len(emb.star_centers) != k or len(emb.star_leaves) != k:
        return [f"Expected {k} stars, got {len(emb.star_centers)} centers"]
    if len(emb.path_vertices) != pattern.r:
        return [f"Expected {pattern.r} paths, got {len(emb.path_vertices)}"]
    used: List[int] = list(emb.star_centers)
    for v in emb.used_vertices():
        if not 0 <= v < d.n:
            problems.append(f"Vertex {v} not in host")
    if problems:
        return problems
    if pattern.roots is not None and list(emb.star_centers) != list(pattern.roots):
        problems.append(f"Centers {emb.star_centers} differ from roots {pattern.roots}")

    for i, (star, leaves) in enumerate(zip(pattern.stars, emb.star_leaves)):
        c = emb.star_centers[i]
        if len(leaves) != star.leaves:
            problems.append(f"Star {i} has {len(leaves)} leaves, expected {star.leaves}")
            continue
        for v in leaves[:star.out_leaves]:
            if not d.has_arc(c, v):
                problems.append(f"Missing arc {c}->{v} for out-leaf of star {i}")
        for v in leaves[star.out_leaves:]:
            if not d.has_arc(v, c):
                problems.append(f"Missing arc {v}->{c} for in-leaf of star {i}")
        used.extend(leaves)

    for j, (path, seq) in enumerate(zip(pattern.paths, emb.path_vertices)):
        start, end = emb.star_centers[path.source], emb.star_centers[path.target]
        expected = path.vertex_count + 1 if path.is_closed else path.vertex_count
        if len(seq) != expected:
            problems.append(f"Path {j} has {len(seq)} entries, expected {expected}")
            continue
        if seq[0] != start or seq[-1] != end:
            problems.append(f"Path {j} does not run from {start} to {end}")
        for u, v in zip(seq, seq[1:]):
            if not d.has_arc(u, v):
                problems.append(f"Missing arc {u}->{v} on path {j}")
        used.extend(seq[1:-1])

    if len(set(used)) != len(used):
        problems.append("Embedding reuses a vertex")
    return problems

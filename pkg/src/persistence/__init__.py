"""Text file formats and instance directories."""

from .formats import (
    Annotations,
    GraphInput,
    format_bipartite,
    format_decomposition,
    format_digraph,
    format_dimacs,
    format_embedding,
    format_graph,
    format_pattern,
    format_roles,
    format_saddp,
    parse_bipartite,
    parse_decomposition,
    parse_digraph,
    parse_dimacs,
    parse_graph,
    parse_pattern,
    parse_roles,
    parse_saddp,
    read_text,
    write_text,
)
from .store import InstanceStore

__all__ = [
    "Annotations", "GraphInput", "InstanceStore", "read_text", "write_text",
    "parse_digraph", "format_digraph", "parse_decomposition", "format_decomposition",
    "parse_saddp", "format_saddp", "parse_pattern", "format_pattern",
    "parse_roles", "format_roles", "parse_graph", "format_graph",
    "parse_bipartite", "format_bipartite", "parse_dimacs", "format_dimacs",
    "format_embedding",
]

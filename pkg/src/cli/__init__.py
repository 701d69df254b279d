"""Command-line interface (`python -m src.cli`)."""

from .app import build_parser, main

__all__ = ["build_parser", "main"]

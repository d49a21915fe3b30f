"""Shared reader/writer plumbing."""

from __future__ import annotations

from ..ag_core import GraphError


class ParseError(GraphError):
    """Malformed input text; the message carries line/column where known."""


class ConversionLossError(GraphError):
    """The target format cannot express part of the source structure."""


def line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - text.rfind("\n", 0, pos)
    return line, col

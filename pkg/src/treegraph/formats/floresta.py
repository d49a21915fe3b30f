"""Portuguese treebank "deitada" (laid-out) trees.

One node per line; the count of leading ``=`` signs gives the node's
depth.  The first node line of a sentence is the root; its immediate
constituents appear unprefixed, so a line with k ``=`` signs sits k+1
levels below the root.  Node lines read ``FUNC:CAT(features)`` with a
tab-separated word form on terminal lines; a non-metadata line without
``:`` is a bare punctuation token.  A child may only be one level
deeper than the line before it.
"""

from __future__ import annotations

import re

from ..ag_core import AnnotationGraph, Arc
from ..constituency import Leaf, TreeNode, build_chart
from .common import ParseError

_NODE = re.compile(
    r"^(?P<func>[^:()\t]+):(?P<cat>[^(\t]+?)"
    r"(?:\((?P<feat>[^)]*)\))?"
    r"(?:\t+(?P<form>.+))?$")
_METADATA = re.compile(r"^(SOURCE:|C\d+(-\d+)?\s|[A-Z]+\d+(-\d+)?$)")


def _blocks(text: str) -> list[list[str]]:
    lines = text.splitlines()
    if not any(l.strip() == "<s>" for l in lines):
        return [[l for l in lines if l.strip()]]
    blocks, cur, inside = [], [], False
    for line in lines:
        stripped = line.strip()
        if stripped == "<s>":
            cur, inside = [], True
        elif stripped == "</s>":
            blocks.append(cur)
            inside = False
        elif inside and stripped:
            cur.append(line)
    return blocks


def _parse_line(line: str):
    m = _NODE.match(line)
    if m:
        fields = {"func": m.group("func"), "label": m.group("cat").strip()}
        if m.group("feat") is not None:
            fields["features"] = m.group("feat")
        if m.group("form") is not None:
            fields["form"] = m.group("form").strip()
            return Leaf(fields)
        return TreeNode(fields, [])
    return Leaf({"form": line.strip()})


def _parse_block(lines: list[str], n: int) -> TreeNode | Leaf:
    root = None
    stack: list[tuple[int, TreeNode]] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if _METADATA.match(line.strip()):
            continue
        marks = len(line) - len(line.lstrip("="))
        node = _parse_line(line.lstrip("="))
        if root is None:
            if marks:
                raise ParseError("sentence %d line %d: root line carries '='"
                                 % (n, lineno))
            root = node
            if isinstance(node, TreeNode):
                stack.append((0, node))
            continue
        depth = marks + 1
        while stack and stack[-1][0] >= depth:
            stack.pop()
        if not stack or stack[-1][0] != depth - 1:
            raise ParseError(
                "sentence %d line %d: depth %d jumps more than one level"
                % (n, lineno, depth))
        stack[-1][1].children.append(node)
        if isinstance(node, TreeNode):
            stack.append((depth, node))
    if root is None:
        raise ParseError("sentence %d has no nodes" % n)
    return root


def read_floresta(text: str) -> list[tuple[AnnotationGraph, Arc]]:
    return [build_chart(_parse_block(block, n))
            for n, block in enumerate(_blocks(text), 1) if block]

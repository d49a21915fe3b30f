"""Bracketed treebank text (Penn Treebank and descendants).

One s-expression per tree: ``(LABEL child ...)`` where children are
nested constituents or terminal tokens.  Terminals starting with ``*``
are traces (empty constituents); a trailing ``-N`` on a trace or on a
category label is a coindex tag and is split off into the dedicated
coindex field, rejoined on output.  Disfluency markers ([, +, ]) and
any other unusual tokens are ordinary terminals.
"""

from __future__ import annotations

import re

from ..ag_core import AnnotationGraph, Arc, ArcType
from ..constituency import (
    Leaf,
    TreeNode,
    build_chart,
    discontinuities,
    read_tree,
)
from .common import ConversionLossError, ParseError, line_col

_TOKEN = re.compile(r"[()]|[^\s()]+")
_LABEL_COINDEX = re.compile(r"^(.*[^-])-(\d+)$")
_TRACE_COINDEX = re.compile(r"^(\*.*?)-(\d+)$")


def tokenize(text: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start()) for m in _TOKEN.finditer(text)]


def canonicalize(text: str) -> str:
    """Whitespace-canonical form: the token stream joined with single
    spaces.  Two bracketings are the same tree iff these match."""
    return " ".join(tok for tok, _ in tokenize(text))


def _leaf(token: str) -> Leaf:
    if token.startswith("*"):
        m = _TRACE_COINDEX.match(token)
        if m:
            return Leaf.trace(m.group(1), coindex=m.group(2))
        return Leaf.trace(token)
    return Leaf.word(token)


def _label_fields(token: str) -> dict:
    m = _LABEL_COINDEX.match(token)
    if m:
        return {"label": m.group(1), "coindex": m.group(2)}
    return {"label": token}


def parse_trees(text: str) -> list[TreeNode | Leaf]:
    """All top-level s-expressions as nested trees."""
    out: list[TreeNode | Leaf] = []
    stack: list[list] = []  # [fields | None, children, open position]
    for token, pos in tokenize(text):
        if token == "(":
            if stack and stack[-1][0] is None:
                stack[-1][0] = {"label": ""}
            stack.append([None, [], pos])
        elif token == ")":
            if not stack:
                raise ParseError("unbalanced ')' at %s:%s" % line_col(text, pos))
            fields, children, open_pos = stack.pop()
            if fields is None:
                fields = {"label": ""}
            if not children:
                raise ParseError("empty constituent at %s:%s"
                                 % line_col(text, open_pos))
            node = TreeNode(fields, children)
            if stack:
                stack[-1][1].append(node)
            else:
                out.append(node)
        else:
            if not stack:
                raise ParseError("terminal %r outside any tree at %s:%s"
                                 % ((token,) + line_col(text, pos)))
            if stack[-1][0] is None:
                stack[-1][0] = _label_fields(token)
            else:
                stack[-1][1].append(_leaf(token))
    if stack:
        raise ParseError("unbalanced '(' at %s:%s" % line_col(text, stack[-1][2]))
    return out


def read_penn(text: str) -> list[tuple[AnnotationGraph, Arc]]:
    """One graph per top-level s-expression."""
    return [build_chart(tree) for tree in parse_trees(text)]


def _render(node, allow_unlabeled: bool, top: bool) -> str:
    if isinstance(node, Leaf):
        form = node.form
        tag = node.fields.get("coindex")
        if node.is_trace and tag:
            return "%s-%s" % (form, tag)
        return form
    label = node.label
    tag = node.fields.get("coindex")
    if label and tag:
        label = "%s-%s" % (label, tag)
    if not label and not top and not allow_unlabeled:
        raise ConversionLossError(
            "unlabeled node cannot be written (pass allow_unlabeled to override)")
    body = " ".join(_render(c, allow_unlabeled, False) for c in node.children)
    return "(%s %s)" % (label, body) if label else "(%s)" % body


def render_tree(tree, allow_unlabeled: bool = False) -> str:
    """Bracketed text for an already-nested tree value."""
    return _render(tree, allow_unlabeled, True)


def write_penn(g: AnnotationGraph, root, allow_unlabeled: bool = False) -> str:
    """Bracketed text for the tree under ``root``.

    Rejects trees whose structure brackets cannot express: crossing
    branches and (unless allowed) unlabeled nodes; an unlabeled outer
    wrapper around a single tree is conventional and always accepted.
    """
    root = g.arc(root)
    crossing = [a for a in discontinuities(g)]
    if crossing:
        raise ConversionLossError(
            "crossing branches at %s cannot be bracketed"
            % ", ".join(a.id for a in crossing))
    tree = read_tree(g, root)
    return _render(tree, allow_unlabeled, True)

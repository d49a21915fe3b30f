"""Bracketed trees with record-structured node labels (UAM style).

Each constituent opens with its category; the remaining tokens before
the first child are features.  A quoted ``"<form>"`` token makes the
node a word, with the following quoted token as its lemma.  A bare
``*`` token makes it a phrasal node over a trace.  ``ID-n``/``REF-n``
feature tokens are coreference marks and map to the coindex field
(both sides get tag ``n``).
"""

from __future__ import annotations

import re

from ..ag_core import AnnotationGraph, Arc
from ..constituency import Leaf, TreeNode, build_chart
from .common import ParseError, line_col

_TOKEN = re.compile(r'[()]|"[^"]*"|[^\s()"]+')
_COREF = re.compile(r"^(?:ID|REF)-(\w+)$")
_QUOTED_FORM = re.compile(r'^"<(.*)>"$')


def _tokenize(text):
    return [(m.group(), m.start()) for m in _TOKEN.finditer(text)]


def _interpret(tokens: list[str], children: list, pos, text) -> TreeNode | Leaf:
    if not tokens:
        raise ParseError("constituent without a category at %s:%s"
                         % line_col(text, pos))
    fields = {"label": tokens[0]}
    form = lemma = None
    trace = False
    features = []
    for tok in tokens[1:]:
        m = _QUOTED_FORM.match(tok)
        if m:
            form = m.group(1)
            continue
        if tok.startswith('"') and tok.endswith('"'):
            lemma = tok[1:-1]
            continue
        if tok == "*":
            trace = True
            continue
        m = _COREF.match(tok)
        if m:
            fields["coindex"] = m.group(1)
            continue
        features.append(tok)
    if features:
        fields["features"] = " ".join(features)
    if form is not None:
        if children:
            raise ParseError("word node with children at %s:%s"
                             % line_col(text, pos))
        fields["form"] = form
        if lemma is not None:
            fields["lemma"] = lemma
        return Leaf(fields)
    if trace:
        children = [Leaf.trace()] + children
    if not children:
        raise ParseError("empty constituent at %s:%s" % line_col(text, pos))
    return TreeNode(fields, children)


def parse_trees(text: str) -> list[TreeNode | Leaf]:
    out = []
    stack: list[list] = []  # [tokens, children, open position]
    for token, pos in _tokenize(text):
        if token == "(":
            stack.append([[], [], pos])
        elif token == ")":
            if not stack:
                raise ParseError("unbalanced ')' at %s:%s" % line_col(text, pos))
            tokens, children, open_pos = stack.pop()
            node = _interpret(tokens, children, open_pos, text)
            if stack:
                stack[-1][1].append(node)
            else:
                out.append(node)
        else:
            if not stack:
                raise ParseError("token %r outside any tree at %s:%s"
                                 % ((token,) + line_col(text, pos)))
            if stack[-1][1]:
                raise ParseError("feature token %r after child constituents "
                                 "at %s:%s" % ((token,) + line_col(text, pos)))
            stack[-1][0].append(token)
    if stack:
        raise ParseError("unbalanced '(' at %s:%s" % line_col(text, stack[-1][2]))
    return out


def read_bracket_record(text: str) -> list[tuple[AnnotationGraph, Arc]]:
    return [build_chart(tree) for tree in parse_trees(text)]

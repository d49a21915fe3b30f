"""Turin dependency format: one word per line.

``INDEX form (LEMMA morpho...) [PARENT;REL]`` -- the bracket names the
parent word's index (0 for the root) and the grammatical relation.
Decimal indices like ``13.1`` are fused-token components, ordered after
their integer part.  A physical line is joined with the next until its
parent bracket closes (published samples wrap long lines).
"""

from __future__ import annotations

import re

from ..ag_core import AnnotationGraph, ArcType
from ..constituency import flat_chart
from ..dependency import DependencyView
from .common import ParseError

_LINE = re.compile(
    r"^(?P<idx>\d+(?:\.\d+)?)\s+(?P<form>\S+)\s+"
    r"\((?P<paren>.*)\)\s*\[(?P<parent>[^;\]]+);(?P<rel>[^\]]+)\]$")
_COMPLETE = re.compile(r"\[[^\[\]]*\]\s*$")


def _logical_lines(text: str) -> list[str]:
    out: list[str] = []
    pending = ""
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        pending = (pending + " " + line).strip() if pending else line
        if _COMPLETE.search(pending):
            out.append(pending)
            pending = ""
    if pending:
        raise ParseError("unterminated line (no parent bracket): %r" % pending)
    return out


def _index_key(idx: str) -> tuple[int, int]:
    if "." in idx:
        whole, sub = idx.split(".", 1)
        return int(whole), int(sub)
    return int(idx), 0


def read_turin(text: str) -> tuple[AnnotationGraph, DependencyView]:
    """One sentence of Turin-format text as a dependency view."""
    rows = []
    for line in _logical_lines(text):
        m = _LINE.match(line)
        if m is None:
            raise ParseError("malformed line: %r" % line)
        rows.append(m.groupdict())
    if not rows:
        raise ParseError("no word lines in input")
    rows.sort(key=lambda r: _index_key(r["idx"]))
    g, word_arcs = flat_chart([r["form"] for r in rows])
    anchors = g.anchors()
    root = g.add_arc(anchors[0], anchors[-1], ArcType.ROOT, {"label": "Root"})
    by_idx = {}
    for row, arc in zip(rows, word_arcs):
        by_idx[row["idx"]] = arc
        paren = row["paren"].split()
        if paren:
            arc.fields["lemma"] = paren[0]
        if len(paren) > 1:
            arc.fields["morph"] = " ".join(paren[1:])
        arc.fields["rel"] = row["rel"]
    for row, arc in zip(rows, word_arcs):
        ref = row["parent"]
        if ref == "0":
            g.set_parent(arc, root)
        elif ref in by_idx:
            g.set_parent(arc, by_idx[ref])
        else:
            raise ParseError("word %s names unknown parent %s" % (row["idx"], ref))
    return g, DependencyView(g, root)


def split_sentences(text: str) -> list[str]:
    """Blank-line separated sentence blocks of a corpus file."""
    blocks, cur = [], []
    for line in text.splitlines():
        if line.strip():
            cur.append(line)
        elif cur:
            blocks.append("\n".join(cur))
            cur = []
    if cur:
        blocks.append("\n".join(cur))
    return blocks

"""Dependency trees over a sentence-spanning root arc.

Editing starts from a flat tree in which every word depends on the
root and proceeds by iterating a single move-subtree operation; word
order never changes, so non-projective (crossing) structures are simply
allowed to cross.  Hybrid trees mix in a minority of constituent nodes,
created and deleted with their own operations; constituent spans are
kept as short as possible, growing only when a move makes a constituent
the parent of wider material and shrinking only in an explicit
normalize pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ag_core import AnnotationGraph, Arc, ArcType, GraphError, OpError


@dataclass
class DependencyView:
    """A graph plus its distinguished root arc."""

    graph: AnnotationGraph
    root: Arc


def init_flat(words: list[str]) -> tuple[AnnotationGraph, DependencyView]:
    """Words in order under a root arc spanning the whole sentence."""
    if not words:
        raise GraphError("cannot initialize a dependency tree over no words")
    from .constituency import flat_chart
    g, arcs = flat_chart(words)
    anchors = g.anchors()
    root = g.add_arc(anchors[0], anchors[-1], ArcType.ROOT, {"label": "Root"})
    for w in arcs:
        g.set_parent(w, root)
    return g, DependencyView(g, root)


def _is_descendant(g: AnnotationGraph, arc: Arc, of: Arc) -> bool:
    cur = arc
    seen = set()
    while cur is not None and cur.id not in seen:
        if cur.id == of.id:
            return True
        seen.add(cur.id)
        cur = g.parent_of(cur)
    return False


def move_subtree(v: DependencyView, source, target) -> None:
    """Make ``source`` (and everything below it) depend on ``target``.

    The single generative edit: any rooted tree over the words is
    reachable by iterating it.  Cycles are rejected eagerly; moving onto
    a constituent grows that constituent's span over its new child.
    """
    g = v.graph
    source = g.arc(source)
    target = g.arc(target)
    if source.id == v.root.id:
        raise OpError("the root cannot be moved")
    if source.id == target.id or _is_descendant(g, target, source):
        raise OpError("moving %s under %s would create a cycle"
                      % (source.id, target.id))
    if target.type not in (ArcType.WORD, ArcType.PHRASAL, ArcType.ROOT):
        raise OpError("move target must be a word, constituent or root, not %s"
                      % target.type)
    g.set_parent(source, target)
    if target.type is ArcType.PHRASAL:
        grow_constituent_span(v, target)


def insert_constituent(v: DependencyView, node) -> Arc:
    """Interpose a constituent over ``node``: the dependency-side
    rendering of move down.  The new arc covers only node's own span."""
    g = v.graph
    node = g.arc(node)
    if node.id == v.root.id:
        raise OpError("cannot insert a constituent over the root")
    c = g.add_arc(node.start, node.end, ArcType.PHRASAL, {"label": ""})
    g.set_parent(c, node.parent)
    g.set_parent(node, c)
    return c


def delete_constituent(v: DependencyView, node) -> None:
    """Remove a constituent, handing its children to its parent."""
    g = v.graph
    node = g.arc(node)
    if node.type is not ArcType.PHRASAL:
        raise OpError("delete_constituent applies to constituent arcs, not %s"
                      % node.type)
    parent = node.parent
    kids = g.children_in_order(node)
    g.remove_arc(node)
    for k in kids:
        g.set_parent(k, parent)


def grow_constituent_span(v: DependencyView, c) -> None:
    """Widen ``c`` to the minimal interval covering itself and its
    direct children.  Idempotent; never shrinks."""
    g = v.graph
    c = g.arc(c)
    if c.type is not ArcType.PHRASAL:
        raise OpError("grow_constituent_span applies to constituent arcs")
    ends = [c] + g.children_in_order(c)
    c.start = min((a.start for a in ends), key=g.order_of)
    c.end = max((a.end for a in ends), key=g.order_of)


def normalize_constituent_spans(v: DependencyView) -> None:
    """Recompute every constituent's minimal span bottom-up (spans only
    grow during editing; this is the on-demand shrink pass)."""
    g = v.graph
    consts = g.arcs(ArcType.PHRASAL)
    consts.sort(key=lambda a: g.depth(a), reverse=True)
    for c in consts:
        kids = g.children_in_order(c)
        if kids:
            c.start = min((a.start for a in kids), key=g.order_of)
            c.end = max((a.end for a in kids), key=g.order_of)


def _edge_positions(v: DependencyView) -> list[tuple[Arc, Fraction, Fraction]]:
    g = v.graph
    words = g.words_in_order()
    pos: dict[str, Fraction] = {v.root.id: Fraction(0)}
    for i, w in enumerate(words):
        pos[w.id] = Fraction(i + 1)
    for c in g.arcs(ArcType.PHRASAL):
        # constituents sit at the midpoint of their span's word positions
        covered = [pos[w.id] for w in words
                   if g.order_of(c.start) <= g.order_of(w.start)
                   and g.order_of(w.end) <= g.order_of(c.end)]
        pos[c.id] = sum(covered) / len(covered) if covered \
            else g.order_of(c.start)
    out = []
    for arc in g.arcs():
        if arc.parent is None or arc.id not in pos:
            continue
        parent = g.arc(arc.parent)
        if parent.id not in pos:
            continue
        a, b = pos[arc.id], pos[parent.id]
        out.append((arc, min(a, b), max(a, b)))
    return out


def projectivity_report(v: DependencyView) -> list[tuple[Arc, Arc]]:
    """All pairs of dependency edges that cross under the word order.

    Each edge is named by its child arc; an edge runs between the
    child's position and its parent's (the root counts as position 0,
    before the first word).
    """
    edges = _edge_positions(v)
    crossing = []
    for i, (x, a1, a2) in enumerate(edges):
        for y, b1, b2 in edges[i + 1:]:
            if a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2:
                crossing.append((x, y))
    return crossing

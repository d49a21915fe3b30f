"""Predicate-argument annotation over parsed sentences.

A proposition is a 4-tuple: a predicate constituent set, labeled
argument sets, labeled modifier sets, and an equivalence relation over
parse nodes (used to recover dropped arguments through traces and
sentence-local antecedents).  Constituent sets may have more than one
member -- phrasal predicates like "give up" and disjoint utterance
arguments are the common cases -- and the same predicate instance may
carry several propositions (conjunction).

Materialization writes the proposition into the graph as pred/arg/mod
arcs spanning the hull (minimum start to maximum end) of their member
constituents, with multi-target refs pointing at the members; the pred
arc additionally points at its argument and modifier arcs.  The
syntactic layer is never created, moved or restructured here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ag_core import (
    AnnotationGraph,
    _id_key,
    Arc,
    ArcType,
    GraphError,
    OpError,
    UnknownRefError,
)


@dataclass(frozen=True)
class NodeCoordinate:
    """Parse-node address: leftmost terminal number and height.

    Height counts steps up the parent chain above the terminal's own
    arc: height 0 is the terminal's parent node.  Unary chains stay
    addressable because each step up is one height unit.
    """

    leftmost_terminal: int
    height: int


@dataclass
class Proposition:
    """One predicate instance with its labeled constituent sets.

    All members are arc ids into one sentence graph.  Equivalence
    classes are the non-singleton classes only.
    """

    predicate: set[str] = field(default_factory=set)
    arguments: dict[str, set[str]] = field(default_factory=dict)
    modifiers: dict[str, set[str]] = field(default_factory=dict)
    equivalences: set[frozenset[str]] = field(default_factory=set)


# ----------------------------------------------------------------------
# node addressing

def _subtree_terminals(g: AnnotationGraph, arc: Arc) -> list[int]:
    term_pos = {t.id: i for i, t in enumerate(g.terminal_arcs())}
    if arc.id in term_pos:
        return [term_pos[arc.id]]
    out = []
    for k in g.children_in_order(arc):
        out.extend(_subtree_terminals(g, k))
    return out


def resolve_coordinate(g: AnnotationGraph, c: NodeCoordinate) -> Arc:
    """The unique arc at the given leftmost-terminal/height address."""
    terms = g.terminal_arcs()
    if not 0 <= c.leftmost_terminal < len(terms):
        raise UnknownRefError("no terminal %d (sentence has %d)"
                              % (c.leftmost_terminal, len(terms)))
    arc = terms[c.leftmost_terminal]
    for _ in range(c.height + 1):
        arc = g.parent_of(arc)
        if arc is None:
            raise UnknownRefError("no node at height %d over terminal %d"
                                  % (c.height, c.leftmost_terminal))
    if min(_subtree_terminals(g, arc)) != c.leftmost_terminal:
        raise UnknownRefError(
            "node at height %d over terminal %d has a lower leftmost terminal"
            % (c.height, c.leftmost_terminal))
    return arc


def coordinate_of(g: AnnotationGraph, arc) -> NodeCoordinate:
    """Inverse of resolve_coordinate for non-terminal parse nodes."""
    arc = g.arc(arc)
    covered = _subtree_terminals(g, arc)
    if not covered:
        raise GraphError("arc %s dominates no terminal" % arc.id)
    left = min(covered)
    cur = g.terminal_arcs()[left]
    height = -1
    while cur is not None:
        if cur.id == arc.id:
            if height < 0:
                raise GraphError(
                    "terminal %s is addressed directly, not by coordinate" % arc.id)
            return NodeCoordinate(left, height)
        cur = g.parent_of(cur)
        height += 1
    raise GraphError("arc %s is not on its leftmost terminal's parent chain"
                     % arc.id)


def _resolve(g: AnnotationGraph, node) -> str:
    if isinstance(node, NodeCoordinate):
        return resolve_coordinate(g, node).id
    return g.arc(node).id


# ----------------------------------------------------------------------
# tagging operations

def tag_predicate(g: AnnotationGraph, p: Proposition, nodes) -> None:
    """Set the predicate constituent set (several members for phrasal
    predicates)."""
    ids = {_resolve(g, n) for n in nodes}
    if not ids:
        raise OpError("a predicate needs at least one constituent")
    p.predicate = ids


def tag_argument(g: AnnotationGraph, p: Proposition, label: str, nodes) -> None:
    if label in p.arguments:
        raise OpError("duplicate argument label %r" % label)
    ids = {_resolve(g, n) for n in nodes}
    if not ids:
        raise OpError("argument %r needs at least one constituent" % label)
    p.arguments[label] = ids


def tag_modifier(g: AnnotationGraph, p: Proposition, label: str, nodes) -> None:
    if label in p.modifiers:
        raise OpError("duplicate modifier label %r" % label)
    ids = {_resolve(g, n) for n in nodes}
    if not ids:
        raise OpError("modifier %r needs at least one constituent" % label)
    p.modifiers[label] = ids


def add_equivalence(g: AnnotationGraph, p: Proposition, a, b) -> None:
    """Merge the equivalence classes of two parse nodes (union-find);
    singleton classes are never stored."""
    ra, rb = _resolve(g, a), _resolve(g, b)
    if ra == rb:
        return
    found = [c for c in p.equivalences if ra in c or rb in c]
    merged = frozenset({ra, rb}.union(*found)) if found else frozenset({ra, rb})
    p.equivalences -= set(found)
    p.equivalences.add(merged)


# ----------------------------------------------------------------------
# materialization

def _ordered_members(g: AnnotationGraph, ids) -> list[Arc]:
    arcs = [g.arc(i) for i in ids]
    arcs.sort(key=lambda a: (g.order_of(a.start), g.order_of(a.end), _id_key(a.id)))
    return arcs


def _hull(g: AnnotationGraph, arcs) -> tuple[str, str]:
    start = min((a.start for a in arcs), key=g.order_of)
    end = max((a.end for a in arcs), key=g.order_of)
    return start, end


def _encode_equivalences(p: Proposition) -> str:
    classes = sorted("~".join(sorted(c)) for c in p.equivalences)
    return "|".join(classes)


def _decode_equivalences(text: str) -> set[frozenset[str]]:
    if not text:
        return set()
    return {frozenset(cls.split("~")) for cls in text.split("|")}


def materialize(g: AnnotationGraph, p: Proposition) -> list[Arc]:
    """Write the proposition into the graph as pred/arg/mod arcs.

    Each arc spans the hull of its member constituents and points at
    them through refs; the pred arc also points at every arg/mod arc.
    Equivalence classes ride on the pred arc's "equiv" field as member
    arc ids, keeping them scoped to this proposition.
    """
    for ids in [p.predicate, *p.arguments.values(), *p.modifiers.values()]:
        for i in ids:
            g.arc(i)  # raises UnknownRefError for foreign arcs
    if not p.predicate:
        raise OpError("proposition has no predicate")
    created = []
    pred_members = _ordered_members(g, p.predicate)
    pred = g.add_arc(*_hull(g, pred_members), ArcType.PRED, {"label": "pred"})
    pred.refs = [a.id for a in pred_members]
    if p.equivalences:
        pred.fields["equiv"] = _encode_equivalences(p)
    created.append(pred)
    for label, ids in list(p.arguments.items()) + list(p.modifiers.items()):
        kind = ArcType.ARG if label in p.arguments else ArcType.MOD
        members = _ordered_members(g, ids)
        arc = g.add_arc(*_hull(g, members), kind, {"label": label})
        arc.refs = [a.id for a in members]
        pred.refs.append(arc.id)
        created.append(arc)
    return created


def dematerialize(g: AnnotationGraph, pred) -> None:
    """Remove a materialized proposition: the pred arc and the arg/mod
    arcs it points to.  The syntactic layer is untouched."""
    pred = g.arc(pred)
    if pred.type is not ArcType.PRED:
        raise OpError("%s is not a pred arc" % pred.id)
    for r in list(pred.refs):
        if g.has_arc(r) and g.arc(r).type in (ArcType.ARG, ArcType.MOD):
            g.remove_arc(r)
    g.remove_arc(pred)


def extract(g: AnnotationGraph) -> list[Proposition]:
    """Read every materialized proposition back off the graph, in
    annotation order."""
    out = []
    for pred in sorted(g.arcs(ArcType.PRED), key=lambda a: _id_key(a.id)):
        p = Proposition()
        for r in pred.refs:
            ref = g.arc(r)
            if ref.type is ArcType.ARG:
                p.arguments[ref.label] = set(ref.refs)
            elif ref.type is ArcType.MOD:
                p.modifiers[ref.label] = set(ref.refs)
            else:
                p.predicate.add(r)
        p.equivalences = _decode_equivalences(pred.fields.get("equiv", ""))
        out.append(p)
    return out


# ----------------------------------------------------------------------
# text export

def _surface(g: AnnotationGraph, arc: Arc) -> str:
    """Surface words under an arc; empty when it covers only traces."""
    terms = g.terminal_arcs()
    return " ".join(terms[i].form for i in sorted(_subtree_terminals(g, arc))
                    if terms[i].type is ArcType.WORD)


def _render_member_set(g: AnnotationGraph, p: Proposition, ids) -> str:
    members = _ordered_members(g, ids)
    # adjacent members read as one segment; brackets mark disjoint ones
    segments: list[list[Arc]] = []
    for m in members:
        if segments and segments[-1][-1].end == m.start:
            segments[-1].append(m)
        else:
            segments.append([m])
    parts = []
    for seg in segments:
        text = " ".join(filter(None, (_surface(g, m) for m in seg)))
        if not text:
            # a dropped argument: show the trace and resolve it through
            # the equivalence relation
            resolved = ""
            for cls in p.equivalences:
                if any(m.id in cls for m in seg):
                    rest = cls - {m.id for m in seg}
                    for other in _ordered_members(g, rest):
                        resolved = _surface(g, other)
                        if resolved:
                            break
            text = "*trace* -> %s" % resolved if resolved else "*trace*"
        parts.append(text)
    if len(parts) > 1:
        return " ".join("[%s]" % s for s in parts)
    return parts[0]


def format_propositions(g: AnnotationGraph, props=None) -> str:
    """Render propositions in the block format used for propbank data:
    one rel: line plus one line per labeled argument/modifier."""
    if props is None:
        props = extract(g)
    blocks = []
    for p in props:
        lines = ["%-12s%s" % ("rel:", _render_member_set(g, p, p.predicate))]
        for label, ids in list(p.arguments.items()) + list(p.modifiers.items()):
            lines.append("%-12s%s" % (label + ":", _render_member_set(g, p, ids)))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)

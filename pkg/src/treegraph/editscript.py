"""Line-oriented edit scripts and node selectors.

One command per line, shell-style tokens::

    move_down @2,0
    relabel #e7 label=NP
    move_subtree w1 w4
    group C D
    insert_trace before to coindex=1
    proposition pred=belongs,to Arg0=John Arg1=the,club

Selectors name an arc by id (``#e3``), by parse-node coordinate
(``@leftmost,height``), by a unique label or word form (``VP``,
``w1``), or by a label path from a top-level arc (``S/VP/NP``, first
match in child order).  The same grammar backs the HTTP edit service,
so scripts and interactive sessions replay identically.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field

from .ag_core import AnnotationGraph, Arc, ArcType, GraphError, OpError
from . import constituency as con
from . import dependency as dep
from . import propbank as pb
from .formats import Document
from .propbank import NodeCoordinate, resolve_coordinate


@dataclass
class Command:
    op: str
    selector: str | None = None
    params: dict = field(default_factory=dict)
    line: int = 0


# ----------------------------------------------------------------------
# selectors

def resolve_selector(g: AnnotationGraph, sel: str) -> Arc:
    if not sel:
        raise OpError("empty selector")
    if sel.startswith("#"):
        return g.arc(sel[1:])
    if sel.startswith("@"):
        try:
            left, height = sel[1:].split(",", 1)
            coord = NodeCoordinate(int(left), int(height))
        except ValueError:
            raise OpError("bad coordinate selector %r (want @left,height)"
                          % sel) from None
        return resolve_coordinate(g, coord)
    if "/" in sel:
        return _resolve_path(g, sel.split("/"))
    matches = [a for a in g.arcs()
               if a.label == sel or (a.type in (ArcType.WORD, ArcType.TRACE)
                                     and a.form == sel)]
    if not matches:
        raise OpError("no arc labeled %r" % sel)
    if len(matches) > 1:
        raise OpError("selector %r is ambiguous: %s"
                      % (sel, ", ".join(a.id for a in matches)))
    return matches[0]


def _resolve_path(g: AnnotationGraph, segments: list[str]) -> Arc:
    def matches(arc, name):
        return arc.label == name or arc.form == name

    level = [a for a in g.children_in_order(None) if matches(a, segments[0])]
    for name in segments[1:]:
        level = [k for a in level for k in g.children_in_order(a)
                 if matches(k, name)]
    if not level:
        raise OpError("no arc at path %r" % "/".join(segments))
    return level[0]


# ----------------------------------------------------------------------
# command handlers

def _dependency_view(doc: Document) -> dep.DependencyView:
    g = doc.graph
    roots = g.arcs(ArcType.ROOT)
    if not roots:
        raise OpError("document has no dependency root arc")
    return dep.DependencyView(g, roots[0])


def _oriented(doc: Document, selector) -> con.OrientedTree:
    if selector is None:
        raise OpError("this operation needs a node selector")
    return con.OrientedTree(doc.graph, resolve_selector(doc.graph, selector))


def _simple(fn):
    def handler(doc: Document, selector, params):
        fn(_oriented(doc, selector))
    return handler


def _h_move_down(doc, selector, params):
    con.move_down(_oriented(doc, selector))


def _h_group(doc, selector, params):
    g = doc.graph
    first = resolve_selector(g, selector)
    last = resolve_selector(g, params["to"]) if "to" in params else first
    sibs = g.children_in_order(first.parent)
    ids = [s.id for s in sibs]
    try:
        i, j = ids.index(first.id), ids.index(last.id)
    except ValueError:
        raise OpError("group endpoints are not siblings") from None
    if i > j:
        raise OpError("group endpoints out of order")
    con.group(con.OrientedTree(g, first), sibs[i:j + 1])


def _h_insert_trace(doc, selector, params):
    g = doc.graph
    position = params.get("position")
    if position not in ("before", "after"):
        raise OpError("insert_trace needs position=before|after")
    parent = resolve_selector(g, params["parent"]) if "parent" in params else None
    t = con.OrientedTree(g, resolve_selector(g, selector))
    con.insert_trace(t, position, t.selected,
                     coindex=params.get("coindex"), parent=parent,
                     form=params.get("form", "*"))


def _h_relabel(doc, selector, params):
    fields = params.get("fields", params)
    fields = {k: v for k, v in fields.items() if k != "fields"}
    if not fields:
        raise OpError("relabel needs at least one key=value field")
    con.relabel(_oriented(doc, selector), fields)


def _h_coindex(doc, selector, params):
    g = doc.graph
    if "other" not in params or "tag" not in params:
        raise OpError("coindex needs another node and a tag")
    con.coindex(_oriented(doc, selector),
                resolve_selector(g, params["other"]), params["tag"])


def _h_move_subtree(doc, selector, params):
    if "target" not in params:
        raise OpError("move_subtree needs a target node")
    v = _dependency_view(doc)
    dep.move_subtree(v, resolve_selector(doc.graph, selector),
                     resolve_selector(doc.graph, params["target"]))


def _h_insert_constituent(doc, selector, params):
    v = _dependency_view(doc)
    dep.insert_constituent(v, resolve_selector(doc.graph, selector))


def _h_delete_constituent(doc, selector, params):
    v = _dependency_view(doc)
    dep.delete_constituent(v, resolve_selector(doc.graph, selector))


def _h_grow_span(doc, selector, params):
    v = _dependency_view(doc)
    dep.grow_constituent_span(v, resolve_selector(doc.graph, selector))


def _h_normalize_spans(doc, selector, params):
    dep.normalize_constituent_spans(_dependency_view(doc))


def _selector_list(g, spec) -> list[Arc]:
    if isinstance(spec, str):
        spec = spec.split(",")
    return [resolve_selector(g, s) for s in spec]


def _h_proposition(doc, selector, params):
    g = doc.graph
    if "pred" not in params:
        raise OpError("proposition needs pred=<selectors>")
    p = pb.Proposition()
    pb.tag_predicate(g, p, _selector_list(g, params["pred"]))
    args = params.get("args", {})
    mods = params.get("mods", {})
    for label, spec in args.items():
        pb.tag_argument(g, p, label, _selector_list(g, spec))
    for label, spec in mods.items():
        pb.tag_modifier(g, p, label, _selector_list(g, spec))
    for pair in params.get("equiv", []):
        if isinstance(pair, str):
            pair = pair.split("~")
        if len(pair) < 2:
            raise OpError("an equivalence needs two nodes")
        first = resolve_selector(g, pair[0])
        for other in pair[1:]:
            pb.add_equivalence(g, p, first, resolve_selector(g, other))
    pb.materialize(g, p)


def _h_remove_proposition(doc, selector, params):
    pb.dematerialize(doc.graph, resolve_selector(doc.graph, selector))


OPS = {
    "move_down": _h_move_down,
    "move_up": _simple(con.move_up),
    "promote_right": _simple(con.promote_right),
    "promote_left": _simple(con.promote_left),
    "demote_right": _simple(con.demote_right),
    "demote_left": _simple(con.demote_left),
    "group": _h_group,
    "ungroup": _simple(con.ungroup),
    "insert_trace": _h_insert_trace,
    "delete_trace": _simple(con.delete_trace),
    "relabel": _h_relabel,
    "coindex": _h_coindex,
    "move_subtree": _h_move_subtree,
    "insert_constituent": _h_insert_constituent,
    "delete_constituent": _h_delete_constituent,
    "grow_constituent_span": _h_grow_span,
    "normalize_spans": _h_normalize_spans,
    "proposition": _h_proposition,
    "remove_proposition": _h_remove_proposition,
}


def apply_command(doc: Document, cmd: Command) -> None:
    try:
        handler = OPS[cmd.op]
    except KeyError:
        raise OpError("unknown operation %r" % cmd.op) from None
    handler(doc, cmd.selector, cmd.params)


# ----------------------------------------------------------------------
# script text

_NO_SELECTOR = {"normalize_spans", "proposition"}
_POSITIONAL = {
    "group": "to",
    "coindex": "other",
    "move_subtree": "target",
}


def parse_script(text: str) -> list[Command]:
    """Parse edit-script text; comments (#) and blank lines are skipped."""
    commands = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tokens = shlex.split(line, comments=True)
        except ValueError as exc:
            raise OpError("line %d: %s" % (lineno, exc)) from None
        if not tokens:
            continue
        op, rest = tokens[0], tokens[1:]
        cmd = Command(op, line=lineno)
        if op == "insert_trace":
            if len(rest) < 2:
                raise OpError("line %d: insert_trace needs position and selector"
                              % lineno)
            cmd.params["position"] = rest[0]
            cmd.selector = rest[1]
            rest = rest[2:]
        elif op == "coindex":
            if len(rest) < 3:
                raise OpError("line %d: coindex needs two selectors and a tag"
                              % lineno)
            cmd.selector = rest[0]
            cmd.params["other"] = rest[1]
            cmd.params["tag"] = rest[2]
            rest = rest[3:]
        elif op not in _NO_SELECTOR and rest and "=" not in rest[0]:
            cmd.selector = rest[0]
            rest = rest[1:]
        positional_key = _POSITIONAL.get(op)
        if positional_key and rest and "=" not in rest[0]:
            cmd.params[positional_key] = rest[0]
            rest = rest[1:]
        for tok in rest:
            if "=" not in tok:
                raise OpError("line %d: expected key=value, got %r" % (lineno, tok))
            key, value = tok.split("=", 1)
            if op == "relabel":
                cmd.params.setdefault("fields", {})[key] = value
            elif op == "proposition":
                if key == "pred":
                    cmd.params["pred"] = value
                elif key == "equiv":
                    cmd.params.setdefault("equiv", []).append(value)
                elif key.startswith("mod:"):
                    cmd.params.setdefault("mods", {})[key[4:]] = value
                else:
                    cmd.params.setdefault("args", {})[key] = value
            else:
                cmd.params[key] = value
        commands.append(cmd)
    return commands


def run_script(doc: Document, commands: list[Command]) -> None:
    """Apply commands in order; the first failure aborts with its index."""
    for i, cmd in enumerate(commands):
        try:
            apply_command(doc, cmd)
        except GraphError as exc:
            raise OpError("command %d (%s, line %d) failed: %s"
                          % (i + 1, cmd.op, cmd.line, exc)) from None

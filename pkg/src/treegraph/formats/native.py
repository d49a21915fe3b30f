"""Native persistence: one document per JSON file.

Top-level keys ``anchors`` (array of {id, order, offset?}) and ``arcs``
(array of {id, start, end, type, fields, parent?, refs}), in that fixed
field order, UTF-8.  Order keys serialize as exact rational strings
("3", "7/2").  Serialization is canonical: anchors in order, arcs
outermost-first, so equal graphs produce byte-identical files.

Deserialization is deliberately permissive: structural invariants are
not enforced on load (validate() reports them), so damaged files can be
inspected and repaired.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ..ag_core import Anchor, AnnotationGraph, Arc, ArcType
from .common import ParseError


def graph_to_obj(g: AnnotationGraph) -> dict:
    anchors = []
    for a in g.anchors():
        item = {"id": a.id, "order": str(a.order)}
        if a.offset is not None:
            item["offset"] = a.offset
        anchors.append(item)
    arcs = []
    for arc in g.arcs():
        item = {"id": arc.id, "start": arc.start, "end": arc.end,
                "type": arc.type.value, "fields": dict(arc.fields)}
        if arc.parent is not None:
            item["parent"] = arc.parent
        item["refs"] = list(arc.refs)
        arcs.append(item)
    return {"anchors": anchors, "arcs": arcs}


def obj_to_graph(obj: dict) -> AnnotationGraph:
    if not isinstance(obj, dict) or "anchors" not in obj or "arcs" not in obj:
        raise ParseError("native document needs top-level anchors and arcs")
    g = AnnotationGraph()
    for item in obj["anchors"]:
        try:
            order = Fraction(str(item["order"]))
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad order key %r on anchor %r"
                             % (item.get("order"), item.get("id"))) from None
        g.adopt_anchor(Anchor(str(item["id"]), order, item.get("offset")))
    for item in obj["arcs"]:
        try:
            arc_type = ArcType(item["type"])
        except ValueError:
            raise ParseError("unknown arc type %r on %r"
                             % (item.get("type"), item.get("id"))) from None
        g.adopt_arc(Arc(str(item["id"]), str(item["start"]), str(item["end"]),
                        arc_type, dict(item.get("fields", {})),
                        item.get("parent"), list(item.get("refs", []))))
    return g


def write_native(g: AnnotationGraph) -> str:
    return json.dumps(graph_to_obj(g), ensure_ascii=False, indent=1) + "\n"


def read_native(text: str) -> AnnotationGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("bad JSON: %s" % exc) from None
    return obj_to_graph(obj)


def read_native_corpus(text: str) -> list[AnnotationGraph]:
    """A native file is one document; a JSON array of documents is also
    accepted as a corpus convenience."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("bad JSON: %s" % exc) from None
    if isinstance(obj, list):
        return [obj_to_graph(o) for o in obj]
    return [obj_to_graph(obj)]


def write_native_corpus(graphs: list[AnnotationGraph]) -> str:
    if len(graphs) == 1:
        return write_native(graphs[0])
    return json.dumps([graph_to_obj(g) for g in graphs],
                      ensure_ascii=False, indent=1) + "\n"

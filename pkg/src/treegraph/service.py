"""HTTP edit service backing the web editor.

One session per document: a monotonically increasing revision counter,
an undo stack of full native snapshots (every operation has an inverse,
so undo restores the byte-identical previous serialization), and an
operation log from which any revision can be replayed.  Mutations are
optimistic: the client sends the revision it saw, and a mismatch is a
409 conflict; operation precondition failures are 422 and leave the
revision unchanged.  Per-document mutation is serialized by a lock;
reads serve the latest committed state.

Tree payloads are full-document snapshots: nested nodes with arc ids,
labels, fields and terminal-slot spans, plus the terminal sequence and,
on the propbank layer, the proposition list.  Relabeling a word's form
through this API is rejected so the terminal string of a document is
invariant across any sequence of service mutations.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .ag_core import ArcType, GraphError, SYNTACTIC
from . import editscript
from . import formats
from . import propbank as pb
from .editscript import Command
from .formats import Document, native


class OpRequest(BaseModel):
    revision: int
    op: str
    selector: str | None = None
    params: dict = {}
    layer: str | None = None


@dataclass
class Session:
    doc: Document
    revision: int = 0
    initial: str = ""
    undo_stack: list[str] = dataclass_field(default_factory=list)
    op_log: list[dict] = dataclass_field(default_factory=list)
    lock: threading.Lock = dataclass_field(default_factory=threading.Lock)

    def __post_init__(self):
        if not self.initial:
            self.initial = native.write_native(self.doc.graph)

    def snapshot(self) -> str:
        return native.write_native(self.doc.graph)

    def _restore(self, snapshot: str) -> None:
        self.doc = formats._native_document(native.read_native(snapshot))

    def apply(self, entry: dict) -> None:
        """One mutation: an op entry or {"op": "undo"}."""
        if entry.get("op") == "undo":
            if not self.undo_stack:
                raise GraphError("nothing to undo")
            self._restore(self.undo_stack.pop())
        else:
            before = self.snapshot()
            cmd = Command(entry["op"], entry.get("selector"),
                          entry.get("params", {}))
            self._guard(cmd)
            editscript.apply_command(self.doc, cmd)
            self.undo_stack.append(before)
        self.op_log.append(entry)
        self.revision += 1

    def _guard(self, cmd: Command) -> None:
        # the one door through which this API could change the terminal
        # string: renaming a word's form
        if cmd.op != "relabel" or cmd.selector is None:
            return
        target = editscript.resolve_selector(self.doc.graph, cmd.selector)
        fields = cmd.params.get("fields", cmd.params)
        if target.type in (ArcType.WORD, ArcType.TRACE) and "form" in fields:
            raise GraphError(
                "changing a terminal's form would alter the surface string")

    def replay(self) -> bool:
        """Re-run the op log from revision 0 and compare serializations."""
        fresh = Session(formats._native_document(native.read_native(self.initial)),
                        initial=self.initial)
        for entry in self.op_log:
            fresh.apply(entry)
        return fresh.snapshot() == self.snapshot()


class DocumentStore:
    def __init__(self, sessions: dict[str, Session]):
        self.sessions = sessions

    @classmethod
    def from_documents(cls, docs: dict[str, Document]) -> "DocumentStore":
        return cls({doc_id: Session(doc) for doc_id, doc in docs.items()})

    @classmethod
    def from_corpus(cls, path: str) -> "DocumentStore":
        docs: dict[str, Document] = {}
        root = Path(path)
        files = sorted(p for p in root.iterdir() if p.is_file()) \
            if root.is_dir() else [root]
        for p in files:
            fmt = formats.guess_format(p.name)
            if fmt is None:
                continue
            parsed = formats.read_corpus(fmt, p.read_text(encoding="utf-8"))
            for i, doc in enumerate(parsed):
                doc_id = p.stem if len(parsed) == 1 else "%s.%d" % (p.stem, i)
                docs[doc_id] = doc
        if not docs:
            raise GraphError("no readable documents under %s" % path)
        return cls.from_documents(docs)


# ----------------------------------------------------------------------
# tree payloads

def _slot_spans(g) -> dict[str, tuple[int, int]]:
    slots = {t.id: i for i, t in enumerate(g.terminal_arcs())}

    def span(arc) -> tuple[int, int]:
        if arc.id in slots:
            i = slots[arc.id]
            return (i, i) if arc.type is ArcType.TRACE else (i, i + 1)
        covered = [span(k) for k in g.children_in_order(arc)]
        if not covered:
            return (0, 0)
        return (min(c[0] for c in covered), max(c[1] for c in covered))

    return {arc.id: span(arc) for arc in g.arcs()
            if arc.type in SYNTACTIC or arc.type is ArcType.ROOT}


def _node_payload(g, arc, spans) -> dict:
    if arc.type in (ArcType.WORD, ArcType.TRACE):
        display = arc.label or arc.form
    else:
        display = arc.label or ("•" if arc.type is ArcType.PHRASAL else "")
    return {
        "id": arc.id,
        "type": arc.type.value,
        "label": display,
        "fields": dict(arc.fields),
        "span": list(spans.get(arc.id, (0, 0))),
        "parent": arc.parent,
        "children": [_node_payload(g, k, spans)
                     for k in g.children_in_order(arc)],
    }


def _propositions_payload(g) -> list[dict]:
    out = []
    from .ag_core import _id_key
    preds = sorted(g.arcs(ArcType.PRED), key=lambda a: _id_key(a.id))
    for pred, p in zip(preds, pb.extract(g)):
        out.append({
            "pred_arc": pred.id,
            "predicate": sorted(p.predicate),
            "arguments": {k: sorted(v) for k, v in p.arguments.items()},
            "modifiers": {k: sorted(v) for k, v in p.modifiers.items()},
            "equivalences": [sorted(c) for c in sorted(p.equivalences, key=sorted)],
            "text": pb.format_propositions(g, [p]),
        })
    return out


def tree_payload(session: Session, layer: str) -> dict:
    doc = session.doc
    g = doc.graph
    if layer not in ("constituency", "dependency", "propbank"):
        raise GraphError("unknown layer %r" % layer)
    if layer == "dependency" and doc.kind != "dependency":
        raise GraphError("document has no dependency root arc")
    spans = _slot_spans(g)
    tops = g.children_in_order(None)
    payload = {
        "id": None,  # filled by caller
        "revision": session.revision,
        "layer": layer,
        "terminal_string": g.surface_string(),
        "terminals": [
            {"id": t.id, "form": t.form,
             "trace": t.type is ArcType.TRACE,
             "coindex": t.fields.get("coindex")}
            for t in g.terminal_arcs()],
        "tree": [_node_payload(g, top, spans) for top in tops],
    }
    if layer == "propbank":
        payload["propositions"] = _propositions_payload(g)
        payload["semantic_arcs"] = [
            {"id": a.id, "type": a.type.value, "label": a.label,
             "refs": list(a.refs),
             "span": list(_semantic_span(g, a))}
            for a in g.arcs(ArcType.PRED, ArcType.ARG, ArcType.MOD)]
    return payload


def _semantic_span(g, arc) -> tuple[int, int]:
    terms = g.terminal_arcs()
    lo = g.order_of(arc.start)
    hi = g.order_of(arc.end)
    covered = [i for i, t in enumerate(terms)
               if lo <= g.order_of(t.start) and g.order_of(t.end) <= hi]
    if not covered:
        return (0, 0)
    return (covered[0], covered[-1] + 1)


# ----------------------------------------------------------------------
# application

def create_app(store: DocumentStore) -> FastAPI:
    app = FastAPI(title="treegraph edit service")

    def session(doc_id: str) -> Session:
        try:
            return store.sessions[doc_id]
        except KeyError:
            raise HTTPException(404, {"code": "unknown_document",
                                      "message": "no document %r" % doc_id})

    def rendered(s: Session, doc_id: str, layer: str | None) -> dict:
        layer = layer or ("dependency" if s.doc.kind == "dependency"
                          else "constituency")
        try:
            payload = tree_payload(s, layer)
        except GraphError as exc:
            raise HTTPException(422, {"code": "bad_layer", "message": str(exc)})
        payload["id"] = doc_id
        return payload

    @app.get("/documents")
    def list_documents():
        return {"documents": [
            {"id": doc_id, "revision": s.revision, "kind": s.doc.kind,
             "terminal_string": s.doc.graph.surface_string()}
            for doc_id, s in sorted(store.sessions.items())]}

    @app.get("/documents/{doc_id}/tree")
    def get_tree(doc_id: str, layer: str | None = None):
        return rendered(session(doc_id), doc_id, layer)

    @app.post("/documents/{doc_id}/op")
    def post_op(doc_id: str, req: OpRequest):
        s = session(doc_id)
        with s.lock:
            if req.revision != s.revision:
                raise HTTPException(409, {
                    "code": "revision_conflict",
                    "message": "operation against revision %d but document is "
                               "at %d" % (req.revision, s.revision)})
            try:
                s.apply({"op": req.op, "selector": req.selector,
                         "params": req.params})
            except GraphError as exc:
                raise HTTPException(422, {"code": "precondition_failed",
                                          "message": str(exc)})
            return rendered(s, doc_id, req.layer)

    @app.post("/documents/{doc_id}/undo")
    def post_undo(doc_id: str, layer: str | None = None):
        s = session(doc_id)
        with s.lock:
            try:
                s.apply({"op": "undo"})
            except GraphError as exc:
                raise HTTPException(422, {"code": "precondition_failed",
                                          "message": str(exc)})
            return rendered(s, doc_id, layer)

    @app.get("/documents/{doc_id}/log")
    def get_log(doc_id: str):
        s = session(doc_id)
        return {"id": doc_id, "revision": s.revision,
                "initial": s.initial, "entries": list(s.op_log)}

    @app.post("/documents/{doc_id}/replay")
    def post_replay(doc_id: str):
        s = session(doc_id)
        with s.lock:
            return {"id": doc_id, "revision": s.revision,
                    "consistent": s.replay()}

    return app

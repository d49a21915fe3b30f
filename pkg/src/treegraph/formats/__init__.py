"""Readers and writers between treebank file formats and annotation
graphs.

Each format id maps to exactly one reader; penn, tiger-xml and native
also have writers.  The corpus-level entry points below wrap the
per-sentence functions so the CLI and the edit service can treat any
supported file as a list of documents.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..ag_core import AnnotationGraph, Arc, ArcType, SYNTACTIC
from . import bracket_record, floresta, native, nested_xml, penn, tiger_xml, turin
from .common import ConversionLossError, ParseError

read_penn = penn.read_penn
write_penn = penn.write_penn
read_bracket_record = bracket_record.read_bracket_record
read_floresta = floresta.read_floresta
read_turin = turin.read_turin
read_tiger_xml = tiger_xml.read_tiger_xml
write_tiger_xml = tiger_xml.write_tiger_xml
read_nested_xml = nested_xml.read_nested_xml
read_native = native.read_native
write_native = native.write_native

FORMAT_IDS = ("penn", "bracket-record", "floresta", "turin", "tiger-xml",
              "nested-xml", "native")

EXTENSIONS = {
    ".penn": "penn", ".mrg": "penn", ".ptb": "penn",
    ".uam": "bracket-record",
    ".floresta": "floresta",
    ".turin": "turin", ".tut": "turin",
    ".tiger": "tiger-xml", ".xml": "tiger-xml",
    ".json": "native", ".ag": "native",
}


@dataclass
class Document:
    """One sentence graph plus its distinguished top arc, if any."""

    graph: AnnotationGraph
    root: Arc | None = None

    @property
    def kind(self) -> str:
        if self.root is not None and self.root.type is ArcType.ROOT:
            return "dependency"
        return "constituency"


def _native_document(g: AnnotationGraph) -> Document:
    roots = [a for a in g.arcs(ArcType.ROOT)]
    if roots:
        return Document(g, roots[0])
    tops = g.children_in_order(None)
    return Document(g, tops[0] if len(tops) == 1 else None)


def read_corpus(format_id: str, text: str) -> list[Document]:
    """Parse a whole file in the given format into documents."""
    if format_id == "penn":
        return [Document(g, r) for g, r in penn.read_penn(text)]
    if format_id == "bracket-record":
        return [Document(g, r) for g, r in bracket_record.read_bracket_record(text)]
    if format_id == "floresta":
        return [Document(g, r) for g, r in floresta.read_floresta(text)]
    if format_id == "turin":
        return [Document(v.graph, v.root)
                for _, v in (turin.read_turin(block)
                             for block in turin.split_sentences(text))]
    if format_id == "tiger-xml":
        return [Document(g, r) for g, r in tiger_xml.read_tiger_xml(text)]
    if format_id == "nested-xml":
        return [Document(g, r) for g, r in nested_xml.read_nested_xml(text)]
    if format_id == "native":
        return [_native_document(g) for g in native.read_native_corpus(text)]
    raise ParseError("unknown format %r (expected one of %s)"
                     % (format_id, ", ".join(FORMAT_IDS)))


def _penn_document(doc: Document, allow_unlabeled: bool) -> str:
    g = doc.graph
    semantic = [a for a in g.arcs() if a.type not in SYNTACTIC]
    if semantic:
        raise ConversionLossError(
            "predicate-argument arcs (%s) are not expressible in penn"
            % ", ".join(a.id for a in semantic))
    if doc.kind == "dependency":
        from ..dependency import DependencyView
        from .projection import dependency_to_tree
        tree = dependency_to_tree(DependencyView(g, doc.root))
        return penn.render_tree(tree, allow_unlabeled=True)
    tops = [doc.root] if doc.root is not None else g.children_in_order(None)
    return "\n".join(penn.write_penn(g, top, allow_unlabeled) for top in tops)


def write_corpus(format_id: str, docs: list[Document],
                 allow_unlabeled: bool = False) -> str:
    """Serialize documents; raises ConversionLossError when the target
    cannot express the structure."""
    if format_id == "penn":
        return "\n".join(_penn_document(d, allow_unlabeled) for d in docs) + "\n"
    if format_id == "tiger-xml":
        return tiger_xml.write_corpus([d.graph for d in docs])
    if format_id == "native":
        return native.write_native_corpus([d.graph for d in docs])
    raise ConversionLossError("no writer for format %r (writers exist for "
                              "penn, tiger-xml, native)" % format_id)


def guess_format(path: str) -> str | None:
    for ext, fmt in EXTENSIONS.items():
        if path.endswith(ext):
            return fmt
    return None

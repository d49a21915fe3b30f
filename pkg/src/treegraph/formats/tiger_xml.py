"""TIGER-style XML: nodes, words and explicit edges.

``<n id cat>`` elements are phrasal nodes, ``<w id word>`` elements are
words; ``<edge href="#id(x)"/>`` children of an ``n`` attach targets as
its children, in file order.  An edge may carry ``label`` (the
grammatical role of the dependent, stored on the child's ``rel`` field)
or ``type="semantic"`` (a coreference link: both ends get a shared
coindex tag, and no parent is set).  Word order is ``w`` document
order.  Writing uses the same vocabulary; a ``trace="true"`` attribute
marks zero-width terminals so they survive the roundtrip, and arc
fields ride as plain attributes.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from ..ag_core import AnnotationGraph, Arc, ArcType
from ..constituency import Leaf, TreeNode, build_chart_forest
from .common import ConversionLossError, ParseError

_HREF = re.compile(r"^#(?:id\((?P<paren>[^)]+)\)|(?P<bare>.+))$")
_RESERVED_W = ("id", "word", "trace")
_RESERVED_N = ("id", "cat")


def _parse_soup(text: str) -> ET.Element:
    body = re.sub(r"^\s*<\?xml[^>]*\?>", "", text)
    try:
        return ET.fromstring("<__soup__>%s</__soup__>" % body)
    except ET.ParseError as exc:
        raise ParseError("bad XML: %s" % exc) from None


def _target(edge: ET.Element) -> str:
    href = edge.get("href", "")
    m = _HREF.match(href)
    if m is None:
        raise ParseError("unintelligible edge href %r" % href)
    return m.group("paren") or m.group("bare")


def _read_sentence(sent: ET.Element) -> tuple[AnnotationGraph, Arc]:
    words = list(sent.iter("w"))
    nodes = list(sent.iter("n"))
    if not words:
        raise ParseError("sentence without w elements")
    ids = {}
    leaves = {}
    for w in words:
        wid = w.get("id")
        if wid is None or wid in ids:
            raise ParseError("w element without fresh id (%r)" % wid)
        fields = {"form": w.get("word", "")}
        fields.update((k, v) for k, v in w.attrib.items() if k not in _RESERVED_W)
        leaf = Leaf(fields, is_trace=w.get("trace") == "true")
        ids[wid] = leaf
        leaves[wid] = leaf
    trees = {}
    for n in nodes:
        nid = n.get("id")
        if nid is None or nid in ids:
            raise ParseError("n element without fresh id (%r)" % nid)
        fields = {"label": n.get("cat", "")}
        fields.update((k, v) for k, v in n.attrib.items() if k not in _RESERVED_N)
        tree = TreeNode(fields, [])
        ids[nid] = tree
        trees[nid] = tree

    parent_of: dict[str, str] = {}
    semantic: list[tuple[str, str]] = []
    for n in nodes:
        nid = n.get("id")
        for edge in n.iter("edge"):
            target = _target(edge)
            if target not in ids:
                raise ParseError("edge under %s dangles to %r" % (nid, target))
            if edge.get("type") == "semantic":
                semantic.append((nid, target))
                continue
            if target in parent_of:
                raise ParseError(
                    "%s has two incoming tree edges (%s and %s): not a tree"
                    % (target, parent_of[target], nid))
            parent_of[target] = nid
            child = ids[target]
            label = edge.get("label")
            if label is not None:
                child.fields["rel"] = label
            trees[nid].children.append(child)

    for nid in trees:  # reject cyclic n->n link chains
        seen = set()
        cur = nid
        while cur in parent_of:
            if cur in seen:
                raise ParseError("edge cycle through %s" % cur)
            seen.add(cur)
            cur = parent_of[cur]

    next_tag = 1
    for src, dst in semantic:
        a, b = ids[src], ids[dst]
        tag = a.fields.get("coindex") or b.fields.get("coindex")
        if tag is None:
            tag = str(next_tag)
            next_tag += 1
        a.fields["coindex"] = tag
        b.fields["coindex"] = tag

    # top-level items in word order; childless n elements are malformed
    for nid, tree in trees.items():
        if not tree.children:
            raise ParseError("n element %s has no outgoing edges" % nid)

    order = {id(leaves[w.get("id")]): i for i, w in enumerate(words)}

    def first_word_pos(item) -> int:
        if isinstance(item, Leaf):
            return order[id(item)]
        return min(first_word_pos(c) for c in item.children)

    # terminal order is w document order even if edge order disagrees
    for tree in trees.values():
        tree.children.sort(key=first_word_pos)
    tops = [item for key, item in ids.items() if key not in parent_of]
    tops.sort(key=first_word_pos)
    g, roots = build_chart_forest(tops)
    return g, roots[0]


def read_tiger_xml(text: str) -> list[tuple[AnnotationGraph, Arc]]:
    """One graph per <s> element (a bare n/w fragment is one sentence).
    When a sentence holds several unconnected roots the first becomes
    the reported root; the rest stay as top-level arcs."""
    soup = _parse_soup(text)
    sentences = list(soup.iter("s")) or [soup]
    return [_read_sentence(s) for s in sentences]


def _emit_sentence(g: AnnotationGraph, parent: ET.Element) -> None:
    unsupported = [a for a in g.arcs()
                   if a.type not in (ArcType.WORD, ArcType.TRACE, ArcType.PHRASAL)]
    if unsupported:
        raise ConversionLossError(
            "%s arcs (%s) are not expressible in tiger-xml"
            % (", ".join(sorted({a.type.value for a in unsupported})),
               ", ".join(a.id for a in unsupported)))
    wid = {}
    for i, term in enumerate(g.terminal_arcs(), 1):
        wid[term.id] = "w%d" % i
    nid = {}
    for i, arc in enumerate(g.arcs(ArcType.PHRASAL), 1):
        nid[arc.id] = "n%d" % i
    for arc in g.arcs(ArcType.PHRASAL):
        el = ET.SubElement(parent, "n", id=nid[arc.id], cat=arc.label)
        for k, v in arc.fields.items():
            if k != "label":
                el.set(k, v)
        for child in g.children_in_order(arc):
            ref = wid.get(child.id) or nid.get(child.id)
            edge = ET.SubElement(el, "edge", href="#id(%s)" % ref)
            if "rel" in child.fields:
                edge.set("label", child.fields["rel"])
    for term in g.terminal_arcs():
        el = ET.SubElement(parent, "w", id=wid[term.id], word=term.form)
        if term.type is ArcType.TRACE:
            el.set("trace", "true")
        for k, v in term.fields.items():
            if k not in ("form", "rel"):
                el.set(k, v)


def write_tiger_xml(g: AnnotationGraph) -> str:
    """One sentence as an <s> element."""
    sent = ET.Element("s")
    _emit_sentence(g, sent)
    ET.indent(sent, space=" ")
    return ET.tostring(sent, encoding="unicode")


def write_corpus(graphs) -> str:
    corpus = ET.Element("corpus")
    for i, g in enumerate(graphs, 1):
        sent = ET.SubElement(corpus, "s", id="s%d" % i)
        _emit_sentence(g, sent)
    ET.indent(corpus, space=" ")
    return ET.tostring(corpus, encoding="unicode") + "\n"

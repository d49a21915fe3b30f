"""Trees as plain XML element nesting (French treebank style).

Element names are the node categories; terminals live in the text
content by convention as ``form:POS`` tokens.  A token without a colon
continues a multiword form completed by the next colon-bearing token
("compared to:P" is one word).
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from ..ag_core import AnnotationGraph, Arc
from ..constituency import Leaf, TreeNode, build_chart
from .common import ParseError


def _words_from_text(chunk: str | None, sink: list) -> None:
    if not chunk:
        return
    pending: list[str] = []
    for token in chunk.split():
        if ":" in token:
            form, pos = token.rsplit(":", 1)
            form = " ".join(pending + ([form] if form else []))
            sink.append(Leaf({"form": form, "pos": pos}))
            pending = []
        else:
            pending.append(token)
    if pending:
        sink.append(Leaf({"form": " ".join(pending)}))


def _node(el: ET.Element) -> TreeNode:
    children: list = []
    _words_from_text(el.text, children)
    for sub in el:
        children.append(_node(sub))
        _words_from_text(sub.tail, children)
    if not children:
        raise ParseError("empty element <%s>" % el.tag)
    return TreeNode({"label": el.tag}, children)


def read_nested_xml(text: str) -> list[tuple[AnnotationGraph, Arc]]:
    """One graph per top-level element."""
    body = re.sub(r"^\s*<\?xml[^>]*\?>", "", text)
    try:
        soup = ET.fromstring("<__soup__>%s</__soup__>" % body)
    except ET.ParseError as exc:
        raise ParseError("bad XML: %s" % exc) from None
    if len(soup) == 0:
        raise ParseError("no elements in input")
    return [build_chart(_node(el)) for el in soup]

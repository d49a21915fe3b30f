"""Projecting dependency views onto nested brackets.

Each head's subtree becomes one bracket holding the head word and its
dependents in surface order; this only works when every subtree covers
a contiguous block of words, i.e. for projective trees.  Crossing
dependencies raise ConversionLossError.
"""

from __future__ import annotations

from ..ag_core import ArcType
from ..constituency import Leaf, TreeNode
from ..dependency import DependencyView
from .common import ConversionLossError


def dependency_to_tree(v: DependencyView) -> TreeNode:
    g = v.graph
    pos = {w.id: i for i, w in enumerate(g.words_in_order())}

    def positions(arc) -> list[int]:
        own = [pos[arc.id]] if arc.id in pos else []
        for k in g.children_in_order(arc):
            own.extend(positions(k))
        return own

    def label_of(arc) -> str:
        return arc.fields.get("rel") or arc.label or "X"

    def project(arc):
        kids = g.children_in_order(arc)
        if arc.type is ArcType.WORD and not kids:
            return Leaf(dict(arc.fields))
        covered = sorted(positions(arc))
        if covered and covered[-1] - covered[0] + 1 != len(covered):
            raise ConversionLossError(
                "subtree of %s covers a discontinuous word range %s"
                % (arc.id, covered))
        items = list(kids)
        if arc.type is ArcType.WORD:
            items.append(arc)
        items.sort(key=lambda a: min(positions(a)) if positions(a) else 0)
        children = [Leaf(dict(arc.fields)) if item.id == arc.id else project(item)
                    for item in items]
        return TreeNode({"label": label_of(arc)}, children)

    return project(v.root)

"""Phrase-structure trees over a fixed terminal string.

A tree is encoded in an annotation graph by the chart construction:
every tree node becomes an arc spanning its terminals, with one anchor
per terminal boundary, and parent pointers carry the nesting (so a
unary chain is unambiguous even though parent and child are
coterminous).

The editing operations below are the complete inventory of structural
edits that preserve the terminal string: move down/up, promote and
demote to either side, their generalized forms group/ungroup, and
trace insertion/deletion.  Every operation applies at the selected arc
of an oriented tree and leaves that arc selected.

Traces occupy their own zero-width anchor, placed strictly between the
surrounding terminal boundaries (just before the start anchor of the
terminal that follows).  A phrasal arc dominating only zero-width
material cannot itself be zero width, so it covers the minimal
non-degenerate interval: from the trace anchor to the next anchor.
One consequence is that such arcs may partially overlap a neighbouring
word arc's span; tree structure is always read from parent pointers,
never from span containment.
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
    SYNTACTIC,
)


@dataclass
class Leaf:
    """A terminal of the external tree shape: a word or a trace marker."""

    fields: dict[str, str]
    is_trace: bool = False

    @classmethod
    def word(cls, form: str, **extra) -> "Leaf":
        return cls(dict(form=form, **extra))

    @classmethod
    def trace(cls, form: str = "*", coindex: str | None = None, **extra) -> "Leaf":
        fields = dict(form=form)
        if coindex is not None:
            fields["coindex"] = coindex
        fields.update(extra)
        return cls(fields, is_trace=True)

    @property
    def form(self) -> str:
        return self.fields.get("form", "")


@dataclass
class TreeNode:
    """A nonterminal of the external tree shape."""

    fields: dict[str, str]
    children: list = field(default_factory=list)

    @classmethod
    def phrase(cls, label: str, *children, **extra) -> "TreeNode":
        return cls(dict(label=label, **extra), list(children))

    @property
    def label(self) -> str:
        return self.fields.get("label", "")

    def leaves(self) -> list[Leaf]:
        out = []
        for c in self.children:
            if isinstance(c, Leaf):
                out.append(c)
            else:
                out.extend(c.leaves())
        return out


@dataclass
class Terminal:
    """One slot of the terminal sequence as read off a graph."""

    arc: Arc
    surface: str  # empty for traces
    coindex: str | None = None


@dataclass
class OrientedTree:
    """A graph plus the selected arc at which operations apply."""

    graph: AnnotationGraph
    selected: Arc

    def __post_init__(self):
        if self.selected.type not in SYNTACTIC:
            raise OpError("selected arc %s is not in the syntactic layer"
                          % self.selected.id)


# ----------------------------------------------------------------------
# chart construction

def _cover(g: AnnotationGraph, arcs) -> tuple[str, str]:
    """Minimal non-degenerate anchor interval covering the given arcs."""
    arcs = list(arcs)
    start = min((a.start for a in arcs), key=g.order_of)
    end = max((a.end for a in arcs), key=g.order_of)
    if g.order_of(start) == g.order_of(end):
        nxt = g.successor(end)
        if nxt is None:  # trace anchors always precede some boundary
            raise GraphError("no anchor after %s to cover zero-width material" % end)
        end = nxt.id
    return start, end


def flat_chart(words: list[str]) -> tuple[AnnotationGraph, list[Arc]]:
    """Words only, no phrasal structure: the starting point for editing.

    Anchors carry cumulative character offsets (token lengths plus one
    separator between tokens).
    """
    if not words:
        raise GraphError("cannot build a chart over zero terminals")
    g = AnnotationGraph()
    pos = 0
    anchors = [g.append_anchor(offset=0)]
    for i, w in enumerate(words):
        pos += len(w)
        anchors.append(g.append_anchor(offset=pos))
        pos += 1  # separator
    arcs = []
    for i, w in enumerate(words):
        arcs.append(g.add_arc(anchors[i], anchors[i + 1], ArcType.WORD,
                              {"form": w}))
    return g, arcs


def build_chart(tree) -> tuple[AnnotationGraph, Arc]:
    """Encode a nested tree as an annotation graph; returns the root arc."""
    g, roots = build_chart_forest([tree])
    return g, roots[0]


def build_chart_forest(trees: list) -> tuple[AnnotationGraph, list[Arc]]:
    """Encode several trees over one shared terminal sequence (left to
    right); returns the top-level arcs."""
    leaves = []
    for tree in trees:
        if tree is None or (isinstance(tree, TreeNode) and not tree.children):
            raise GraphError("cannot build a chart from an empty tree")
        leaves.extend(tree.leaves() if isinstance(tree, TreeNode) else [tree])
    if not leaves:
        raise GraphError("cannot build a chart over zero terminals")
    g = AnnotationGraph()

    # boundary anchors for the words, with cumulative character offsets
    words = [l for l in leaves if not l.is_trace]
    pos = 0
    boundaries = [g.append_anchor(offset=0)]
    for w in words:
        pos += len(w.form)
        boundaries.append(g.append_anchor(offset=pos))
        pos += 1

    # terminal arcs; each trace gets its own anchor just before the
    # boundary that follows it
    leaf_arcs: dict[int, Arc] = {}
    word_idx = 0
    prev_trace = None
    for i, leaf in enumerate(leaves):
        if leaf.is_trace:
            hi = boundaries[min(word_idx, len(boundaries) - 1)]
            lo = prev_trace if prev_trace is not None else (
                boundaries[word_idx - 1] if word_idx > 0 else None)
            t = g.add_anchor_between(lo, hi)
            t.offset = hi.offset
            leaf_arcs[i] = g.add_arc(t, t, ArcType.TRACE, leaf.fields)
            prev_trace = t
        else:
            leaf_arcs[i] = g.add_arc(boundaries[word_idx],
                                     boundaries[word_idx + 1],
                                     ArcType.WORD, leaf.fields)
            word_idx += 1
            prev_trace = None

    counter = [0]

    def encode(node) -> Arc:
        if isinstance(node, Leaf):
            arc = leaf_arcs[counter[0]]
            counter[0] += 1
            return arc
        if not node.children:
            raise GraphError("empty constituent %r" % node.label)
        child_arcs = [encode(c) for c in node.children]
        start, end = _cover(g, child_arcs)
        arc = g.add_arc(start, end, ArcType.PHRASAL, node.fields)
        for c in child_arcs:
            g.set_parent(c, arc)
        return arc

    return g, [encode(tree) for tree in trees]


def read_tree(g: AnnotationGraph, root) -> TreeNode | Leaf:
    """Decode the tree under ``root`` back to its nested form.

    The inverse of build_chart: structure comes from parent pointers and
    child order from start anchors.  Syntactic arcs lying inside the
    root's span but not linked into its subtree (or out of it) are
    reported as orphans.
    """
    root = g.arc(root)
    closure = set()

    def walk(arc) -> TreeNode | Leaf:
        closure.add(arc.id)
        if arc.type in (ArcType.WORD, ArcType.TRACE):
            return Leaf(dict(arc.fields), is_trace=arc.type is ArcType.TRACE)
        kids = g.children_in_order(arc)
        return TreeNode(dict(arc.fields), [walk(k) for k in kids])

    shape = walk(root)
    lo, hi = g.order_of(root.start), g.order_of(root.end)
    for arc in g.arcs():
        if arc.type not in SYNTACTIC or arc.id in closure:
            continue
        if not (lo <= g.order_of(arc.start) and g.order_of(arc.end) <= hi):
            continue
        top = arc
        while top.parent is not None:
            top = g.arc(top.parent)
        if top.id not in closure and top.id != root.id \
                and lo <= g.order_of(top.start) and g.order_of(top.end) <= hi:
            raise GraphError(
                "arc %s lies under the span of %s but is not linked into its tree"
                % (arc.id, root.id))
    return shape


def read_forest(g: AnnotationGraph) -> list:
    """All top-level syntactic trees, left to right."""
    return [read_tree(g, top) for top in g.children_in_order(None)]


def terminals(g: AnnotationGraph) -> list[Terminal]:
    return [Terminal(a, "" if a.type is ArcType.TRACE else a.form,
                     a.fields.get("coindex"))
            for a in g.terminal_arcs()]


def terminal_string(g: AnnotationGraph) -> str:
    return g.surface_string()


def discontinuities(g: AnnotationGraph) -> list[Arc]:
    """Phrasal arcs whose terminals do not form a contiguous block.

    The elementary operations never create these, but parent pointers can
    express them (e.g. graphs assembled by hand); validation surfaces
    them behind a flag.
    """
    term_pos = {t.id: i for i, t in enumerate(g.terminal_arcs())}

    def covered(arc) -> list[int]:
        if arc.id in term_pos:
            return [term_pos[arc.id]]
        out = []
        for k in g.children_in_order(arc):
            out.extend(covered(k))
        return out

    bad = []
    for arc in g.arcs(ArcType.PHRASAL):
        pos = sorted(covered(arc))
        if pos and pos[-1] - pos[0] + 1 != len(pos):
            bad.append(arc)
    return bad


# ----------------------------------------------------------------------
# elementary operations

def _ordered_siblings(g: AnnotationGraph, arc: Arc) -> list[Arc]:
    # top-level arcs (parent None) count as siblings of one another
    return g.children_in_order(arc.parent)


def _position(sibs: list[Arc], arc: Arc) -> int:
    for i, s in enumerate(sibs):
        if s.id == arc.id:
            return i
    raise GraphError("arc %s missing from its own sibling list" % arc.id)


def move_down(t: OrientedTree) -> Arc:
    """Interpose a new unlabeled node between the selected arc and its
    parent; at the root this creates a new root."""
    g, n = t.graph, t.selected
    if n.type not in (ArcType.WORD, ArcType.PHRASAL, ArcType.TRACE):
        raise OpError("move_down applies to word, phrasal and trace arcs, not %s"
                      % n.type)
    start, end = _cover(g, [n])
    bar = g.add_arc(start, end, ArcType.PHRASAL, {"label": ""})
    g.set_parent(bar, n.parent)
    g.set_parent(n, bar)
    return bar


def move_up(t: OrientedTree) -> None:
    """Delete the selected arc's parent; applies only to an only child."""
    g, n = t.graph, t.selected
    p = g.parent_of(n)
    if p is None:
        raise OpError("selected arc %s has no parent to remove" % n.id)
    if p.type is not ArcType.PHRASAL:
        raise OpError("parent %s is not a phrasal arc" % p.id)
    sibs = g.children_in_order(p)
    if len(sibs) != 1:
        raise OpError("selected arc %s has siblings" % n.id)
    grand = p.parent
    g.remove_arc(p)
    g.set_parent(n, grand)


def _promote(t: OrientedTree, rightward: bool) -> None:
    g, n = t.graph, t.selected
    p = g.parent_of(n)
    if p is None:
        raise OpError("selected arc %s has no parent" % n.id)
    if p.type is not ArcType.PHRASAL:
        raise OpError("parent %s is not a phrasal arc" % p.id)
    sibs = g.children_in_order(p)
    if len(sibs) < 2:
        raise OpError("selected arc %s is an only child (move_up applies instead)"
                      % n.id)
    edge = sibs[-1] if rightward else sibs[0]
    if edge.id != n.id:
        side = "right" if rightward else "left"
        raise OpError("selected arc %s has siblings to its %s" % (n.id, side))
    if p.parent is None:
        raise OpError("parent %s is the outermost node; promoting out of it "
                      "would detach the selection" % p.id)
    grand = p.parent
    g.set_parent(n, grand)
    p.start, p.end = _cover(g, g.children_in_order(p))


def promote_right(t: OrientedTree) -> None:
    """Move a rightmost child out of its subtree, to sit just after its
    former parent."""
    _promote(t, rightward=True)


def promote_left(t: OrientedTree) -> None:
    _promote(t, rightward=False)


def _demote(t: OrientedTree, rightward: bool) -> None:
    g, n = t.graph, t.selected
    sibs = _ordered_siblings(g, n)
    i = _position(sibs, n)
    j = i + 1 if rightward else i - 1
    side = "right" if rightward else "left"
    if j < 0 or j >= len(sibs):
        raise OpError("selected arc %s has no %s sibling" % (n.id, side))
    y = sibs[j]
    if y.type is not ArcType.PHRASAL:
        raise OpError("%s sibling %s is a %s arc, not phrasal" % (side, y.id, y.type))
    g.set_parent(n, y)
    y.start, y.end = _cover(g, [y, n])


def demote_right(t: OrientedTree) -> None:
    """Move the selected arc into its right sibling, as leftmost child."""
    _demote(t, rightward=True)


def demote_left(t: OrientedTree) -> None:
    """Move the selected arc into its left sibling, as rightmost child."""
    _demote(t, rightward=False)


def group(t: OrientedTree, nodes: list[Arc]) -> Arc:
    """Wrap a contiguous run of siblings under a new unlabeled node.

    Composed from the elementary operations: move_down on the first
    node, then demote_left for each following one.
    """
    g = t.graph
    if not nodes:
        raise OpError("group needs at least one node")
    first = g.arc(nodes[0])
    sibs = _ordered_siblings(g, first)
    positions = []
    for node in nodes:
        node = g.arc(node)
        if node.parent != first.parent:
            raise OpError("grouped nodes must share one parent")
        positions.append(_position(sibs, node))
    if positions != list(range(positions[0], positions[0] + len(positions))):
        raise OpError("grouped nodes must be contiguous siblings in order")
    bar = move_down(OrientedTree(g, first))
    for node in nodes[1:]:
        demote_left(OrientedTree(g, g.arc(node)))
    return bar


def ungroup(t: OrientedTree) -> None:
    """Inverse of group: delete the selected node, splicing its children
    into its place."""
    g, n = t.graph, t.selected
    if n.type is not ArcType.PHRASAL:
        raise OpError("ungroup applies to phrasal arcs, not %s" % n.type)
    parent = n.parent
    kids = g.children_in_order(n)
    g.remove_arc(n)
    for k in kids:
        g.set_parent(k, parent)


# ----------------------------------------------------------------------
# traces

def insert_trace(t: OrientedTree, position: str, terminal,
                 coindex: str | None = None, parent=None,
                 form: str = "*") -> Arc:
    """Insert a zero-width trace before or after an existing terminal.

    The trace gets a fresh anchor in the gap (the surface string is
    untouched).  Its parent defaults to the smallest phrasal arc
    covering the insertion boundary; ancestors are widened if the new
    anchor falls outside their span.
    """
    g = t.graph
    x = g.arc(terminal)
    if x.type not in (ArcType.WORD, ArcType.TRACE):
        raise OpError("trace position must name a terminal, not %s" % x.type)
    if position == "before":
        hi = g.anchor(x.start)
    elif position == "after":
        hi = g.successor(x.end) if x.type is ArcType.TRACE else g.anchor(x.end)
    else:
        raise OpError("position must be 'before' or 'after', not %r" % position)
    lo = g.predecessor(hi)
    anchor = g.add_anchor_after(lo) if lo is not None \
        else g.add_anchor_between(None, hi)
    fields = {"form": form}
    if coindex is not None:
        fields["coindex"] = coindex
    trace = g.add_arc(anchor, anchor, ArcType.TRACE, fields)
    if parent is not None:
        host = g.arc(parent)
    else:
        host = _smallest_covering_phrasal(g, hi)
    if host is not None:
        g.set_parent(trace, host)
        cur = host
        while cur is not None and g.order_of(cur.start) > anchor.order:
            cur.start = anchor.id
            cur = g.parent_of(cur)
    return trace


def _smallest_covering_phrasal(g: AnnotationGraph, boundary) -> Arc | None:
    o = boundary.order
    cands = [a for a in g.arcs(ArcType.PHRASAL)
             if g.order_of(a.start) <= o <= g.order_of(a.end)]
    if not cands:
        return None
    return max(cands, key=lambda a: (g.depth(a), _id_key(a.id)))


def delete_trace(t: OrientedTree) -> None:
    """Remove the selected trace and, when possible, its anchor;
    ancestor spans shrink back to cover their remaining children."""
    g, n = t.graph, t.selected
    if n.type is not ArcType.TRACE:
        raise OpError("delete_trace applies to trace arcs, not %s" % n.type)
    if g.children_in_order(n):
        raise OpError("trace %s dominates structure" % n.id)
    anchor_id = n.start
    chain = list(g.ancestors(n))
    g.remove_arc(n)
    for arc in chain:
        kids = g.children_in_order(arc)
        if kids:
            arc.start, arc.end = _cover(g, kids)
    g.remove_anchor_if_unused(anchor_id)


# ----------------------------------------------------------------------
# labels

def relabel(t: OrientedTree, fields: dict[str, str]) -> None:
    """Replace the given label fields on the selected arc; structure is
    untouched."""
    t.selected.fields.update(fields)


def coindex(t: OrientedTree, other, tag: str) -> None:
    """Give the selected arc and ``other`` the same coindex tag."""
    g = t.graph
    t.selected.fields["coindex"] = tag
    g.arc(other).fields["coindex"] = tag

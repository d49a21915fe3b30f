"""Annotation graph data model.

An annotation graph is a directed acyclic graph over a totally ordered
sequence of anchors.  Arcs span anchor intervals and carry a typed,
fielded record (label, grammatical function, coindex tag, ...).  All
annotation layers -- constituency trees, dependency trees,
predicate-argument structure -- live in one graph and are told apart by
arc type.  Tree structure is carried by explicit parent pointers on the
arcs, never by arc insertion order, which disambiguates coterminous arcs
(a nonterminal with a single child spans exactly the same interval as
that child).

Anchors are ordered by a dense sortable key (an arbitrary-precision
rational) so a new anchor can always be placed between two existing ones
without renumbering.  Zero-width arcs (start == end) are reserved for
traces; a trace occupies its own anchor, placed strictly between the
surrounding terminal boundaries.

Graphs are single-owner mutable values with no internal locking; callers
that share a graph across threads must serialize mutation externally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

_ID_SUFFIX = re.compile(r"^[a-z]+(\d+)$")


def _id_key(arc_id: str):
    """Sort key that orders generated ids numerically (e2 < e10)."""
    m = _ID_SUFFIX.match(arc_id)
    return (0, int(m.group(1)), arc_id) if m else (1, 0, arc_id)


class GraphError(ValueError):
    """Base class for all annotation graph errors."""


class UnknownRefError(GraphError):
    """An anchor or arc reference does not resolve in this graph."""


class SpanError(GraphError):
    """An arc span violates the anchor ordering rules."""


class CycleError(GraphError):
    """A parent assignment would make the parent relation cyclic."""


class AmbiguousSiblingError(GraphError):
    """More than one arc of the same type family qualifies as right sibling."""


class OpError(GraphError):
    """Precondition failure of a structural editing operation."""


class ArcType(str, Enum):
    WORD = "word"
    PHRASAL = "phrasal"
    ROOT = "root"
    TRACE = "trace"
    PRED = "pred"
    ARG = "arg"
    MOD = "mod"

    def __str__(self):
        return self.value


# word/phrasal/root/trace form the syntactic layer; pred/arg/mod the
# semantic layer.  Sibling queries never cross families.
SYNTACTIC = frozenset((ArcType.WORD, ArcType.PHRASAL, ArcType.ROOT, ArcType.TRACE))
SEMANTIC = frozenset((ArcType.PRED, ArcType.ARG, ArcType.MOD))


def type_family(t: ArcType) -> frozenset:
    return SYNTACTIC if t in SYNTACTIC else SEMANTIC


@dataclass
class Anchor:
    """An ordered point in the terminal sequence.

    ``order`` is unique within a graph and defines the total order.
    ``offset`` optionally pins the anchor to a character index or a time
    in seconds; offsets are never synthesized by graph operations.
    """

    id: str
    order: Fraction
    offset: float | None = None


@dataclass
class Arc:
    """A typed annotation spanning ``start``..``end`` in anchor order.

    ``fields`` is the fielded record (insertion order is preserved and
    canonical).  ``parent`` carries tree structure; ``refs`` is the
    multi-target pointer list used by pred/arg/mod arcs.  All
    cross-references are anchor/arc ids, resolved through the owning
    graph.
    """

    id: str
    start: str
    end: str
    type: ArcType
    fields: dict[str, str] = field(default_factory=dict)
    parent: str | None = None
    refs: list[str] = field(default_factory=list)

    @property
    def label(self) -> str:
        return self.fields.get("label", "")

    @property
    def form(self) -> str:
        return self.fields.get("form", "")


@dataclass
class Violation:
    """One broken invariant, naming the offending anchor/arc and the rule."""

    rule: str
    subject: str
    detail: str

    def __str__(self):
        return "%s [%s]: %s" % (self.rule, self.subject, self.detail)


class AnnotationGraph:
    """The store for one document: ordered anchors plus a set of arcs."""

    def __init__(self):
        self._anchors: dict[str, Anchor] = {}
        self._arcs: dict[str, Arc] = {}
        self._next_anchor = 0
        self._next_arc = 0

    # ------------------------------------------------------------------
    # lookup

    def anchor(self, ref) -> Anchor:
        key = ref.id if isinstance(ref, Anchor) else ref
        try:
            return self._anchors[key]
        except KeyError:
            raise UnknownRefError("unknown anchor %r" % (key,)) from None

    def arc(self, ref) -> Arc:
        key = ref.id if isinstance(ref, Arc) else ref
        try:
            return self._arcs[key]
        except KeyError:
            raise UnknownRefError("unknown arc %r" % (key,)) from None

    def has_arc(self, arc_id: str) -> bool:
        return arc_id in self._arcs

    def anchors(self) -> list[Anchor]:
        """All anchors in order."""
        return sorted(self._anchors.values(), key=lambda a: a.order)

    def arcs(self, *types: ArcType) -> list[Arc]:
        """Arcs in canonical order (wider/outer spans first), optionally
        filtered by type."""
        sel = [a for a in self._arcs.values() if not types or a.type in types]
        sel.sort(key=self._canonical_key)
        return sel

    def _canonical_key(self, arc: Arc):
        return (
            self.anchor(arc.start).order,
            -self.anchor(arc.end).order,
            self.depth(arc),
            _id_key(arc.id),
        )

    def order_of(self, anchor_ref) -> Fraction:
        return self.anchor(anchor_ref).order

    def depth(self, arc: Arc) -> int:
        """Number of parent hops above ``arc`` (0 for a parentless arc)."""
        d = 0
        cur = arc
        seen = {arc.id}
        while cur.parent is not None:
            cur = self.arc(cur.parent)
            if cur.id in seen:  # corrupt graph; reported by validate()
                break
            seen.add(cur.id)
            d += 1
        return d

    def parent_of(self, arc: Arc) -> Arc | None:
        return self.arc(arc.parent) if arc.parent is not None else None

    def ancestors(self, arc: Arc):
        cur = self.parent_of(arc)
        seen = set()
        while cur is not None and cur.id not in seen:
            yield cur
            seen.add(cur.id)
            cur = self.parent_of(cur)

    # ------------------------------------------------------------------
    # construction

    def _fresh_anchor_id(self) -> str:
        aid = "a%d" % self._next_anchor
        self._next_anchor += 1
        return aid

    def _fresh_arc_id(self) -> str:
        eid = "e%d" % self._next_arc
        self._next_arc += 1
        return eid

    def clone(self) -> "AnnotationGraph":
        """An independent copy sharing no mutable state."""
        g = AnnotationGraph()
        for a in self._anchors.values():
            g._anchors[a.id] = Anchor(a.id, a.order, a.offset)
        for arc in self._arcs.values():
            g._arcs[arc.id] = Arc(arc.id, arc.start, arc.end, arc.type,
                                  dict(arc.fields), arc.parent, list(arc.refs))
        g._next_anchor = self._next_anchor
        g._next_arc = self._next_arc
        return g

    def adopt_anchor(self, anchor: Anchor) -> Anchor:
        """Insert a pre-built anchor verbatim (deserialization path: no
        checks beyond id uniqueness; validate() reports the rest)."""
        if anchor.id in self._anchors:
            raise GraphError("duplicate anchor id %r" % anchor.id)
        self._anchors[anchor.id] = anchor
        m = _ID_SUFFIX.match(anchor.id)
        if m:
            self._next_anchor = max(self._next_anchor, int(m.group(1)) + 1)
        return anchor

    def adopt_arc(self, arc: Arc) -> Arc:
        """Insert a pre-built arc verbatim (deserialization path)."""
        if arc.id in self._arcs:
            raise GraphError("duplicate arc id %r" % arc.id)
        self._arcs[arc.id] = arc
        m = _ID_SUFFIX.match(arc.id)
        if m:
            self._next_arc = max(self._next_arc, int(m.group(1)) + 1)
        return arc

    def append_anchor(self, offset: float | None = None) -> Anchor:
        """Add an anchor after all existing ones (integer order keys)."""
        existing = self.anchors()
        order = existing[-1].order + 1 if existing else Fraction(0)
        anchor = Anchor(self._fresh_anchor_id(), order, offset)
        self._anchors[anchor.id] = anchor
        return anchor

    def add_anchor_between(self, lo: Anchor | None, hi: Anchor | None) -> Anchor:
        """Add an anchor strictly between two neighbours.

        ``lo=None`` places it before the first anchor, ``hi=None`` after
        the last.  The new anchor carries no offset.
        """
        if lo is None and hi is None:
            order = Fraction(0)
        elif lo is None:
            order = hi.order - 1
        elif hi is None:
            order = lo.order + 1
        else:
            order = (lo.order + hi.order) / 2
        anchor = Anchor(self._fresh_anchor_id(), order)
        self._anchors[anchor.id] = anchor
        return anchor

    def add_anchor_after(self, ref) -> Anchor:
        """Insert a fresh anchor directly after ``ref``.

        Existing anchors keep their order keys and offsets; successive
        calls with the same argument stack up in call order.
        """
        base = self.anchor(ref)
        following = [a for a in self._anchors.values() if a.order > base.order]
        nxt = min(following, key=lambda a: a.order) if following else None
        return self.add_anchor_between(base, nxt)

    def successor(self, ref) -> Anchor | None:
        base = self.anchor(ref)
        following = [a for a in self._anchors.values() if a.order > base.order]
        return min(following, key=lambda a: a.order) if following else None

    def predecessor(self, ref) -> Anchor | None:
        base = self.anchor(ref)
        preceding = [a for a in self._anchors.values() if a.order < base.order]
        return max(preceding, key=lambda a: a.order) if preceding else None

    def add_arc(self, start, end, type: ArcType, fields: dict | None = None) -> Arc:
        """Add an arc from ``start`` to ``end``.

        The span must run forward in anchor order; a zero-width span
        (start == end) is legal only for traces.  The new arc has no
        parent and no refs.
        """
        s = self.anchor(start)
        e = self.anchor(end)
        type = ArcType(type)
        if s.order > e.order:
            raise SpanError("reversed span %s..%s" % (s.id, e.id))
        if s.order == e.order and type is not ArcType.TRACE:
            raise SpanError("zero-width span is only allowed for trace arcs")
        arc = Arc(self._fresh_arc_id(), s.id, e.id, type, dict(fields or {}))
        self._arcs[arc.id] = arc
        return arc

    def remove_arc(self, ref) -> None:
        """Remove an arc; children, if any, become parentless."""
        arc = self.arc(ref)
        del self._arcs[arc.id]
        for other in self._arcs.values():
            if other.parent == arc.id:
                other.parent = None
            if arc.id in other.refs:
                other.refs = [r for r in other.refs if r != arc.id]

    def remove_anchor_if_unused(self, ref) -> bool:
        anchor = self.anchor(ref)
        for arc in self._arcs.values():
            if anchor.id in (arc.start, arc.end):
                return False
        del self._anchors[anchor.id]
        return True

    def set_parent(self, child, parent) -> None:
        """Replace ``child``'s parent pointer; rejects cycles eagerly."""
        c = self.arc(child)
        if parent is None:
            c.parent = None
            return
        p = self.arc(parent)
        cur = p
        while cur is not None:
            if cur.id == c.id:
                raise CycleError(
                    "setting parent of %s to %s would create a cycle" % (c.id, p.id))
            cur = self.parent_of(cur)
        c.parent = p.id

    # ------------------------------------------------------------------
    # structural queries

    def right_sibling(self, ref, skip_traces: bool = False) -> Arc | None:
        """The arc starting where ``ref`` ends, under the same parent.

        Only arcs of the same type family (syntactic vs. semantic) are
        considered; if more than one qualifies the graph is ambiguous and
        an error is raised.  By default a zero-width trace sibling sitting
        in the gap before the shared anchor counts as the right sibling;
        pass ``skip_traces=True`` for the strict anchor-equality reading.
        """
        x = self.arc(ref)
        family = type_family(x.type)
        if not skip_traces:
            gap = [
                z for z in self._arcs.values()
                if z.type is ArcType.TRACE and z.parent == x.parent
                and z.id != x.id
                and self.order_of(x.start) < self.order_of(z.start) < self.order_of(x.end)
            ]
            if gap:
                return min(gap, key=lambda z: self.order_of(z.start))
        cands = [
            y for y in self._arcs.values()
            if y.id != x.id and y.start == x.end and y.parent == x.parent
            and y.type in family
        ]
        if not cands:
            return None
        if len(cands) > 1:
            raise AmbiguousSiblingError(
                "arcs %s all start at %s under the same parent"
                % (sorted(y.id for y in cands), x.end))
        return cands[0]

    def coterminous(self, ref) -> list[Arc]:
        """All arcs sharing ``ref``'s start and end anchors, outermost
        (closest to the root of the parent chain) first."""
        x = self.arc(ref)
        same = [a for a in self._arcs.values()
                if a.start == x.start and a.end == x.end]
        same.sort(key=lambda a: (self.depth(a), _id_key(a.id)))
        return same

    def children_in_order(self, ref) -> list[Arc]:
        """Direct children of ``ref`` (inverse parent pointers), sorted by
        start anchor; coterminous ties put the innermost child first.

        ``ref=None`` yields the parentless arcs of the syntactic layer,
        i.e. the top level of a forest under construction.
        """
        if ref is None:
            kids = [a for a in self._arcs.values()
                    if a.parent is None and a.type in SYNTACTIC]
        else:
            x = self.arc(ref)
            kids = [a for a in self._arcs.values() if a.parent == x.id]
        kids.sort(key=lambda a: (self.order_of(a.start), -self.depth(a), _id_key(a.id)))
        return kids

    def terminal_arcs(self) -> list[Arc]:
        """Word and trace arcs in surface order."""
        terms = [a for a in self._arcs.values()
                 if a.type in (ArcType.WORD, ArcType.TRACE)]
        terms.sort(key=lambda a: self.order_of(a.start))
        return terms

    def words_in_order(self) -> list[Arc]:
        return [a for a in self.terminal_arcs() if a.type is ArcType.WORD]

    def surface_string(self) -> str:
        """The terminal string; traces contribute nothing."""
        return " ".join(a.form for a in self.words_in_order())

    def terminal_index(self, ref) -> int:
        """Position of a word/trace arc in the terminal sequence."""
        x = self.arc(ref)
        for i, t in enumerate(self.terminal_arcs()):
            if t.id == x.id:
                return i
        raise UnknownRefError("%s is not a terminal arc" % x.id)

    # ------------------------------------------------------------------
    # validation

    def validate(self) -> list[Violation]:
        """Check every graph invariant; empty result means the graph is
        well formed.  Never raises: corrupt graphs (e.g. from raw
        deserialization) are reported, not rejected."""
        out: list[Violation] = []
        by_order: dict[Fraction, str] = {}
        for a in self._anchors.values():
            if a.order in by_order:
                out.append(Violation(
                    "duplicate-order", a.id,
                    "anchors %s and %s share order key %s"
                    % (by_order[a.order], a.id, a.order)))
            by_order[a.order] = a.id
        with_offsets = sorted(
            (a for a in self._anchors.values() if a.offset is not None),
            key=lambda a: a.order)
        for prev, cur in zip(with_offsets, with_offsets[1:]):
            if cur.offset < prev.offset:
                out.append(Violation(
                    "offset-order", cur.id,
                    "offset %s of %s precedes offset %s of earlier anchor %s"
                    % (cur.offset, cur.id, prev.offset, prev.id)))
        for arc in sorted(self._arcs.values(), key=lambda a: a.id):
            bad_ref = False
            for end in (arc.start, arc.end):
                if end not in self._anchors:
                    out.append(Violation(
                        "unknown-anchor", arc.id,
                        "arc %s references missing anchor %s" % (arc.id, end)))
                    bad_ref = True
            if not bad_ref:
                s, e = self.order_of(arc.start), self.order_of(arc.end)
                if s > e:
                    out.append(Violation(
                        "reversed-span", arc.id,
                        "arc %s runs backwards (%s > %s)" % (arc.id, arc.start, arc.end)))
                elif s == e and arc.type is not ArcType.TRACE:
                    out.append(Violation(
                        "zero-width", arc.id,
                        "%s arc %s has zero width" % (arc.type, arc.id)))
            if arc.parent is not None:
                if arc.parent not in self._arcs:
                    out.append(Violation(
                        "unknown-parent", arc.id,
                        "arc %s has missing parent %s" % (arc.id, arc.parent)))
                else:
                    ptype = self._arcs[arc.parent].type
                    if ptype not in (ArcType.PHRASAL, ArcType.ROOT, ArcType.WORD):
                        out.append(Violation(
                            "bad-parent-type", arc.id,
                            "arc %s has %s-typed parent %s"
                            % (arc.id, ptype, arc.parent)))
            if arc.type in (ArcType.WORD, ArcType.TRACE) and arc.refs:
                out.append(Violation(
                    "refs-on-terminal", arc.id,
                    "%s arc %s carries refs" % (arc.type, arc.id)))
            for r in arc.refs:
                if r not in self._arcs:
                    out.append(Violation(
                        "unknown-ref", arc.id,
                        "arc %s references missing arc %s" % (arc.id, r)))
        out.extend(self._parent_cycles())
        return out

    def _parent_cycles(self) -> list[Violation]:
        out = []
        state: dict[str, int] = {}  # 1 = visiting, 2 = done
        for start in sorted(self._arcs):
            if state.get(start):
                continue
            path = []
            cur = start
            while cur is not None and cur in self._arcs and state.get(cur) != 2:
                if state.get(cur) == 1:
                    cycle = path[path.index(cur):]
                    out.append(Violation(
                        "parent-cycle", cur,
                        "parent chain cycles through %s" % " -> ".join(cycle + [cur])))
                    break
                state[cur] = 1
                path.append(cur)
                cur = self._arcs[cur].parent
            for n in path:
                state[n] = 2
        return out

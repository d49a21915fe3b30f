"""Independent reference implementations used as test oracles.

Everything here is computed by brute force from first principles
(enumeration, interval arithmetic) without going through the library's
own operations, so tests can compare the two sides.
"""

from functools import lru_cache
from itertools import product

# ----------------------------------------------------------------------
# tree-shape enumeration
#
# Shapes are nested tuples over terminal indices: a terminal is its
# index (an int), an internal node is the tuple of its children, and a
# forest is a tuple of trees covering the terminals left to right.


@lru_cache(maxsize=None)
def _trees(i: int, j: int, budget: int) -> frozenset:
    """All (shape, internals_used) for a single tree over [i, j)."""
    out = set()
    if j == i + 1:
        out.add((i, 0))
    if budget >= 1:
        for forest, used in _forests(i, j, budget - 1):
            out.add((forest, used + 1))
    return frozenset(out)


@lru_cache(maxsize=None)
def _forests(i: int, j: int, budget: int) -> frozenset:
    """All (forest, internals_used) partitioning [i, j) into >=1 trees."""
    out = set()
    for k in range(i + 1, j + 1):
        for tree, used_t in _trees(i, k, budget):
            if k == j:
                out.add(((tree,), used_t))
            else:
                for rest, used_r in _forests(k, j, budget - used_t):
                    out.add(((tree,) + rest, used_t + used_r))
    return frozenset(out)


def enumerate_forests(n_terminals: int, max_internal: int) -> set:
    """Every forest shape over n terminals with at most max_internal
    unlabeled internal nodes (each internal node has >= 1 child)."""
    return {f for f, _ in _forests(0, n_terminals, max_internal)}


def enumerate_trees(n_terminals: int, max_internal: int) -> set:
    """Every single-rooted tree shape spanning all n terminals."""
    return {t for t, _ in _trees(0, n_terminals, max_internal)
            if isinstance(t, tuple)}


def enumerate_small_trees(max_nodes: int) -> list:
    """Every tree shape with at most max_nodes nodes total (terminals
    count), including bare single terminals and all unary chains."""
    shapes = []
    for n_term in range(1, max_nodes + 1):
        budget = max_nodes - n_term
        for shape, used in _trees(0, n_term, budget):
            if n_term + used <= max_nodes:
                if n_term == 1 or isinstance(shape, tuple):
                    shapes.append(shape)
    return shapes


def shape_nodes(shape) -> int:
    if isinstance(shape, int):
        return 1
    return 1 + sum(shape_nodes(c) for c in shape)


# ----------------------------------------------------------------------
# dependency enumeration


def enumerate_parent_functions(n_words: int) -> set:
    """Every acyclic parent assignment over n words; parent -1 is the
    root.  Returned as tuples parent[i] for word i."""
    ok = set()
    for combo in product(*[[-1] + [j for j in range(n_words) if j != i]
                           for i in range(n_words)]):
        acyclic = True
        for start in range(n_words):
            seen = set()
            cur = start
            while cur != -1:
                if cur in seen:
                    acyclic = False
                    break
                seen.add(cur)
                cur = combo[cur]
            if not acyclic:
                break
        if acyclic:
            ok.add(combo)
    return ok


def crossing_pairs_from_parents(parents: dict) -> set:
    """Crossing edge pairs computed straight from a position->parent
    map (root at position 0, words at 1..n), by interval interleave."""
    edges = {}
    for child, parent in parents.items():
        a, b = min(child, parent), max(child, parent)
        edges[child] = (a, b)
    out = set()
    keys = sorted(edges)
    for i, x in enumerate(keys):
        for y in keys[i + 1:]:
            (a1, a2), (b1, b2) = edges[x], edges[y]
            if a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2:
                out.add((x, y))
    return out


# ----------------------------------------------------------------------
# span hulls


def hull_by_orders(member_spans) -> tuple:
    """(min start, max end) over raw (start_order, end_order) pairs."""
    return (min(s for s, _ in member_spans), max(e for _, e in member_spans))

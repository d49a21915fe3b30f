import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from treegraph.constituency import Leaf, TreeNode, build_chart

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture
def fixtures():
    return fixture_text


def chart(label, *items):
    """Shorthand: strings become word leaves, '*'-strings traces."""
    children = []
    for item in items:
        if isinstance(item, str):
            children.append(Leaf.trace(item) if item.startswith("*")
                            else Leaf.word(item))
        else:
            children.append(item)
    return TreeNode.phrase(label, *children)


def shape_to_tree(shape, label_iter=None):
    """Oracle shape (nested int tuples) -> labeled TreeNode/Leaf."""
    if label_iter is None:
        counter = iter(range(1, 10_000))
        label_iter = ("N%d" % i for i in counter)
    if isinstance(shape, int):
        return Leaf.word("w%d" % shape)
    label = next(label_iter)
    return TreeNode.phrase(label, *(shape_to_tree(c, label_iter) for c in shape))


def graph_shape(g, top=None):
    """Nested-int-tuple shape of a graph's syntactic layer (terminal
    arcs mapped to their surface positions)."""
    idx = {t.id: i for i, t in enumerate(g.terminal_arcs())}

    def walk(arc):
        if arc.id in idx:
            return idx[arc.id]
        return tuple(walk(k) for k in g.children_in_order(arc))

    if top is not None:
        return walk(g.arc(top))
    return tuple(walk(t) for t in g.children_in_order(None))


def random_tree(rng: random.Random, n_terminals: int, trace_prob=0.0):
    """A random labeled tree over at least one word terminal."""
    leaves = []
    words = 0
    for i in range(n_terminals):
        if rng.random() < trace_prob and (words or i < n_terminals - 1):
            leaves.append(Leaf.trace("*"))
        else:
            leaves.append(Leaf.word("w%d" % i))
            words += 1
    if not any(not l.is_trace for l in leaves):
        leaves[0] = Leaf.word("w0")
    label_counter = iter(range(1, 10_000))

    def build(span):
        if len(span) == 1 and rng.random() < 0.4:
            return span[0]
        if len(span) == 1:
            return TreeNode.phrase("N%d" % next(label_counter), span[0])
        cuts = sorted(rng.sample(range(1, len(span)),
                                 rng.randint(0, min(2, len(span) - 1))))
        parts = []
        prev = 0
        for c in cuts + [len(span)]:
            parts.append(span[prev:c])
            prev = c
        children = [build(p) if len(p) > 1 or rng.random() < 0.5 else p[0]
                    for p in parts]
        return TreeNode.phrase("N%d" % next(label_counter), *children)

    top = build(leaves)
    if isinstance(top, Leaf):
        top = TreeNode.phrase("TOP", top)
    return top

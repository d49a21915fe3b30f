"""Treebank editing over annotation graphs.

Constituency trees, dependency trees and predicate-argument structure
share one graph model; all structural edits preserve the terminal
string; readers and writers connect the model to the common treebank
file formats.
"""

from .ag_core import (
    Anchor,
    AnnotationGraph,
    Arc,
    ArcType,
    AmbiguousSiblingError,
    CycleError,
    GraphError,
    OpError,
    SpanError,
    UnknownRefError,
    Violation,
)
from .constituency import Leaf, OrientedTree, Terminal, TreeNode
from .dependency import DependencyView
from .propbank import NodeCoordinate, Proposition

__version__ = "0.1.0"

__all__ = [
    "Anchor", "AnnotationGraph", "Arc", "ArcType",
    "AmbiguousSiblingError", "CycleError", "GraphError", "OpError",
    "SpanError", "UnknownRefError", "Violation",
    "Leaf", "OrientedTree", "Terminal", "TreeNode",
    "DependencyView", "NodeCoordinate", "Proposition",
    "__version__",
]

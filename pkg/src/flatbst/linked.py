"""
Conversion between the flat arrays and a linked node representation.

The linked form costs one object per node; the arrays stay the primary
representation.
"""
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from flatbst.errors import CorruptTreeError, PreconditionError
from flatbst.types import INDEX_DTYPE, NONE, Provenance, TreeArrays


@dataclass(eq=False)
class Node:
    index: int
    key: Any = None
    left: Optional["Node"] = None
    right: Optional["Node"] = None
    parent: Optional["Node"] = None


def to_linked(tree: TreeArrays, keys: Optional[Sequence[Any]] = None) -> Optional[Node]:
    """Linked copy of the tree; returns the root node (None when empty).

    Node i carries keys[i] when keys are given, else its index.
    """
    if keys is not None and len(keys) != tree.n:
        raise PreconditionError(f"Expected {tree.n} keys, got {len(keys)}")
    if tree.n == 0:
        return None
    nodes = [Node(i, keys[i] if keys is not None else i) for i in range(tree.n)]
    for node in nodes:
        lc = int(tree.left[node.index])
        rc = int(tree.right[node.index])
        if lc != NONE:
            node.left = nodes[lc]
            nodes[lc].parent = node
        if rc != NONE:
            node.right = nodes[rc]
            nodes[rc].parent = node
    return nodes[int(tree.root)]


def from_linked(root: Optional[Node], *, store_parents: bool = True) -> TreeArrays:
    """Arrays for a linked tree whose indices are 0..n-1.

    Raises:
        CorruptTreeError: if indices repeat or do not cover 0..n-1
    """
    collected: dict[int, Node] = {}
    stack = [root] if root is not None else []
    while stack:
        node = stack.pop()
        if node.index in collected:
            raise CorruptTreeError(f"Node index {node.index} appears twice")
        collected[node.index] = node
        stack.extend(child for child in (node.left, node.right) if child is not None)

    n = len(collected)
    if set(collected) != set(range(n)):
        raise CorruptTreeError("Node indices must cover 0..n-1")
    left = np.full(n, NONE, dtype=INDEX_DTYPE)
    right = np.full(n, NONE, dtype=INDEX_DTYPE)
    parent = np.full(n, NONE, dtype=INDEX_DTYPE) if store_parents else None
    for i, node in collected.items():
        if node.left is not None:
            left[i] = node.left.index
            if parent is not None:
                parent[node.left.index] = i
        if node.right is not None:
            right[i] = node.right.index
            if parent is not None:
                parent[node.right.index] = i
    return TreeArrays(
        n=n,
        root=NONE if root is None else root.index,
        left=left,
        right=right,
        parent=parent,
        provenance=Provenance.FOREIGN,
    ).lock()

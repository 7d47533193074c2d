"""
Tree output formats: JSON document, Graphviz DOT and plain arrays.
"""
import logging
from collections import deque
from pathlib import Path
from typing import Any, Optional, Sequence, Union

import numpy as np
from pydantic import ValidationError

from flatbst.errors import InputFormatError
from flatbst.schemas import TreeDocument
from flatbst.types import INDEX_DTYPE, NONE, Provenance, TreeArrays

logger = logging.getLogger(__name__)

FORMATS = ("json", "dot", "arrays")


def _nullable(arr: np.ndarray) -> list[Optional[int]]:
    return [None if v == NONE else v for v in arr.tolist()]


def _indices(values: list[Optional[int]], name: str) -> np.ndarray:
    try:
        return np.array([NONE if v is None else v for v in values], dtype=INDEX_DTYPE)
    except OverflowError as e:
        raise InputFormatError(f"Field '{name}' holds an index outside the 64-bit range: {e}")


def to_document(tree: TreeArrays) -> TreeDocument:
    fields: dict[str, Any] = {
        "n": tree.n,
        "root": None if tree.root == NONE else int(tree.root),
    }
    if tree.parent is not None:
        fields["parent"] = _nullable(tree.parent)
    fields["left"] = _nullable(tree.left)
    fields["right"] = _nullable(tree.right)
    return TreeDocument(**fields)


def from_document(doc: TreeDocument) -> TreeArrays:
    """Arrays for a parsed document. Provenance is FOREIGN.

    Raises:
        InputFormatError: if array lengths disagree with n or an index is negative
    """
    arrays = {"left": doc.left, "right": doc.right}
    if doc.parent is not None:
        arrays["parent"] = doc.parent
    for name, values in arrays.items():
        if len(values) != doc.n:
            raise InputFormatError(f"Field '{name}' has {len(values)} entries, expected {doc.n}")
        if any(v is not None and v < 0 for v in values):
            raise InputFormatError(f"Field '{name}' holds a negative index")
    if doc.root is not None and doc.root < 0:
        raise InputFormatError("Field 'root' is negative")
    return TreeArrays(
        n=doc.n,
        root=NONE if doc.root is None else doc.root,
        left=_indices(doc.left, "left"),
        right=_indices(doc.right, "right"),
        parent=None if doc.parent is None else _indices(doc.parent, "parent"),
        provenance=Provenance.FOREIGN,
    ).lock()


def to_json(tree: TreeArrays) -> str:
    """Compact JSON; ``parent`` is omitted when the tree stores none."""
    return to_document(tree).model_dump_json(exclude_unset=True)


def from_json(text: str) -> TreeArrays:
    """Parse a JSON tree document.

    Raises:
        InputFormatError: on malformed JSON or schema mismatch
    """
    try:
        doc = TreeDocument.model_validate_json(text)
    except ValidationError as e:
        raise InputFormatError(f"Malformed tree document: {e.error_count()} error(s): {e.errors()[0]['msg']}")
    return from_document(doc)


def read_tree(path: Union[str, Path]) -> TreeArrays:
    """Load a JSON tree document from disk.

    Raises:
        OSError: if the file cannot be read
        InputFormatError: on bytes that are not UTF-8, malformed JSON or schema mismatch
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise InputFormatError(f"{path}: not UTF-8 text at byte {e.start}") from e
    return from_json(text)


def to_dot(tree: TreeArrays, keys: Optional[Sequence[Any]] = None) -> str:
    """Graphviz digraph, breadth-first from the root.

    Each node is declared before its outgoing edges, so every edge appears
    once with its parent already listed. Labels are indices, or
    ``index: key`` when keys are given.
    """
    lines = ["digraph flatbst {", "  node [shape=circle];"]
    if tree.n:
        queue = deque([int(tree.root)])
        while queue:
            j = queue.popleft()
            label = f"{j}: {keys[j]}" if keys is not None else str(j)
            lines.append(f'  {j} [label="{label}"];')
            for child in (int(tree.left[j]), int(tree.right[j])):
                if child != NONE:
                    lines.append(f"  {j} -> {child};")
                    queue.append(child)
    lines.append("}")
    return "\n".join(lines)


def to_arrays_text(tree: TreeArrays) -> str:
    """Whitespace-separated arrays, ``-`` for absent links."""

    def row(name: str, arr: np.ndarray) -> str:
        cells = ["-" if v == NONE else str(v) for v in arr.tolist()]
        return " ".join([name, *cells])

    lines = [f"n {tree.n}", f"root {'-' if tree.root == NONE else tree.root}"]
    if tree.parent is not None:
        lines.append(row("parent", tree.parent))
    lines.append(row("left", tree.left))
    lines.append(row("right", tree.right))
    return "\n".join(lines)


def render(tree: TreeArrays, fmt: str, keys: Optional[Sequence[Any]] = None) -> str:
    if fmt == "json":
        return to_json(tree)
    if fmt == "dot":
        return to_dot(tree, keys)
    if fmt == "arrays":
        return to_arrays_text(tree)
    raise ValueError(f"Unknown format: {fmt}")

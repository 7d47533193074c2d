"""
Search over a sorted array treated as a "virtual" tree.

Nothing is built: the children of node j come from index arithmetic alone.
A right step that lands past the last element keeps stepping down-left until
it reaches an existing node, which reproduces the glued edges of the explicit
tree exactly.
"""
from dataclasses import dataclass
from typing import Any, Iterable, NamedTuple, Optional, Sequence

from flatbst.bitops import pow2_trailing, root_index
from flatbst.errors import PreconditionError
from flatbst.types import NONE, TreeArrays


class SearchOutcome(NamedTuple):
    found: bool
    index: int
    comparisons: int


@dataclass(frozen=True)
class KeySequence:
    """Read-only sorted keys; node i carries keys[i]."""
    keys: Sequence[Any]

    def __len__(self) -> int:
        return len(self.keys)

    def __getitem__(self, i: int) -> Any:
        return self.keys[i]

    @classmethod
    def from_iterable(cls, items: Iterable[Any]) -> "KeySequence":
        return cls(tuple(items))

    def first_unsorted(self) -> Optional[int]:
        """Index of the first key smaller than its predecessor, or None."""
        for i in range(1, len(self.keys)):
            if self.keys[i] < self.keys[i - 1]:
                return i
        return None


def _check_node(j: int, n: int) -> None:
    if j < 0 or j >= n:
        raise PreconditionError(f"Node {j} outside [0, {n - 1}]")


def implicit_left(j: int, n: int) -> int:
    """Left child of j in the virtual tree over n nodes (NONE for leaves)."""
    _check_node(j, n)
    half = pow2_trailing(j) >> 1
    return j - half if half else NONE


def implicit_right(j: int, n: int) -> int:
    """Right child of j in the virtual tree over n nodes.

    Past the last node, descend left until an existing node is reached; a
    missing leaf means there is no right child.
    """
    _check_node(j, n)
    half = pow2_trailing(j) >> 1
    if not half:
        return NONE
    i = j + half
    while i > n - 1:
        half = pow2_trailing(i) >> 1
        if not half:
            return NONE
        i -= half
    return i


def search(keys: Sequence[Any], target: Any) -> SearchOutcome:
    """Look up target in sorted keys by walking the virtual tree.

    Each examined node counts as one comparison. With duplicate keys any
    matching index may be returned.
    """
    n = len(keys)
    if n == 0:
        return SearchOutcome(False, NONE, 0)
    j = root_index(n)
    comparisons = 0
    while j != NONE:
        comparisons += 1
        key = keys[j]
        if target == key:
            return SearchOutcome(True, j, comparisons)
        if target < key:
            j = implicit_left(j, n)
        else:
            j = implicit_right(j, n)
    return SearchOutcome(False, NONE, comparisons)


def search_tree(tree: TreeArrays, keys: Sequence[Any], target: Any) -> SearchOutcome:
    """Same lookup over materialized arrays (any shape, including completed)."""
    if len(keys) != tree.n:
        raise PreconditionError(f"Expected {tree.n} keys, got {len(keys)}")
    j = tree.root
    comparisons = 0
    while j != NONE:
        comparisons += 1
        key = keys[j]
        if target == key:
            return SearchOutcome(True, j, comparisons)
        j = int(tree.left[j]) if target < key else int(tree.right[j])
    return SearchOutcome(False, NONE, comparisons)

"""
Rotation pass that turns a freshly built tree into a complete one.

Only the down-right spine is touched. At each spine node whose right
subtree is shorter than its level, the left child is rotated up. Each step
moves one level down, so the pass costs O(log n) time and O(1) memory.
"""
import logging
from typing import Optional

from flatbst.bitops import msb, trailing_ones_level
from flatbst.errors import PreconditionError
from flatbst.types import NONE, BuildStats, Provenance, TreeArrays

logger = logging.getLogger(__name__)


def right_subtree_levels(j: int, n: int) -> int:
    """Height in levels of the right subtree of spine node j in a fresh tree.

    Zero for the last node, otherwise M(n-1-j) + 1.
    """
    if j < 0 or j > n - 1:
        raise PreconditionError(f"Node {j} outside [0, {n - 1}]")
    if j == n - 1:
        return 0
    return msb(n - 1 - j) + 1


def _rotate(tree: TreeArrays, x: int, z: int, promote_to_root: bool) -> int:
    """Promote left[x] into x's place below z (or to the root); returns it.

    The parent array is written, never read.
    """
    left, right, parent = tree.left, tree.right, tree.parent
    y = int(left[x])
    if promote_to_root:
        tree.root = y
        if parent is not None:
            parent[y] = NONE
    else:
        right[z] = y
        if parent is not None:
            parent[y] = z
    moved = int(right[y])
    left[x] = moved
    if parent is not None and moved != NONE:
        parent[moved] = x
    right[y] = x
    if parent is not None:
        parent[x] = y
    return y


def make_complete(
    tree: TreeArrays,
    *,
    in_place: bool = True,
    stats: Optional[BuildStats] = None,
) -> TreeArrays:
    """Rewrite a fresh tree so every level above the deepest is full.

    Args:
        tree: Output of build/build_perfect/build_parallel
        in_place: Rewrite the given arrays (default); otherwise work on a copy
        stats: Optional counters; ``rotations`` is incremented per rotation

    Returns:
        The completed tree (the same object when in_place)

    Raises:
        PreconditionError: if the tree was not freshly built
    """
    if tree.provenance is not Provenance.FRESH:
        raise PreconditionError(
            f"make_complete needs a freshly built tree, got provenance '{tree.provenance.value}'"
        )
    # The result keeps the lock state of the input.
    relock = tree.locked
    target = tree if in_place else tree.copy()
    n = target.n

    # n <= 3 is already complete; the walk below would step onto a NONE child at n = 2.
    if n <= 3:
        target.provenance = Provenance.COMPLETED
        return target.lock() if relock else target

    target.unlock()

    rotations = 0
    x = target.root
    z = NONE
    h = trailing_ones_level(x)
    while h > 1:
        if right_subtree_levels(x, n) < h:
            z = _rotate(target, x, z, promote_to_root=(z == NONE))
            rotations += 1
            logger.debug(f"Rotated {z} above {x} at level {h}")
        else:
            z = x
            x = int(target.right[x])
        h -= 1

    target.provenance = Provenance.COMPLETED
    if relock:
        target.lock()
    if stats is not None:
        stats.rotations += rotations
    logger.info(f"Completed tree with {n} nodes using {rotations} rotations, root {target.root}")
    return target

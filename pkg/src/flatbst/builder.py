"""
Linear-time, non-recursive construction of minimal-height BST arrays.

Every node j is filled from its own index in a single pass: level-0 nodes
(even j) are leaves, node j on level k >= 1 gets children j -/+ 2**(k-1), and
the parent is j + 2**k or j - 2**k depending on bit k+1 of j. For sizes that
are not 2**K - 1 some of those links point past n-1; a walk of O(log n) steps
down from the root glues each "right, then lefts" run through missing nodes
into one edge.
"""
import logging
from typing import Optional

import numpy as np

from flatbst.bitops import msb, pow2_trailing, pow2_trailing_array, root_index
from flatbst.config import settings
from flatbst.errors import CapacityError, ParameterError
from flatbst.types import (
    INDEX_DTYPE,
    MAX_NODES,
    NONE,
    BuildOptions,
    BuildStats,
    Provenance,
    TreeArrays,
    empty_tree,
)
logger = logging.getLogger(__name__)

# build_perfect accepts K up to this value
MAX_PERFECT_LEVELS = 62

DEFAULT_OPTIONS = BuildOptions()


def parent_rule(j: int) -> int:
    """Parent of j in the perfect BST containing it.

    j + 2**L(j) when bit L(j)+1 of j is clear, else j - 2**L(j). Callers
    handle the root themselves.
    """
    k = pow2_trailing(j)
    if j & (k << 1):
        return j - k
    return j + k


def check_count(n: int) -> None:
    if n < 0:
        raise ParameterError(f"Node count must be non-negative, got {n}")
    if n > MAX_NODES:
        raise CapacityError(f"Node count {n} exceeds 2**63")


def resolve_block_size(opts: BuildOptions) -> int:
    size = opts.block_size if opts.block_size is not None else settings.FLATBST_BLOCK_SIZE
    if size < 1:
        raise ParameterError(f"Block size must be positive, got {size}")
    return size


def allocate(n: int, opts: BuildOptions) -> tuple[np.ndarray, np.ndarray, Optional[np.ndarray]]:
    """Uninitialized output arrays for an n-node tree.

    Raises:
        CapacityError: if the arrays cannot be allocated
    """
    try:
        left = np.empty(n, dtype=INDEX_DTYPE)
        right = np.empty(n, dtype=INDEX_DTYPE)
        parent = np.empty(n, dtype=INDEX_DTYPE) if opts.store_parents else None
    except (MemoryError, ValueError, OverflowError) as e:
        count = 3 if opts.store_parents else 2
        requested = count * n * np.dtype(INDEX_DTYPE).itemsize
        raise CapacityError(f"Cannot allocate {requested} bytes for {n} nodes: {e}") from e
    return left, right, parent


def fill_range(
    left: np.ndarray,
    right: np.ndarray,
    parent: Optional[np.ndarray],
    start: int,
    stop: int,
    block_size: int,
    stats: Optional[BuildStats] = None,
) -> None:
    """Write the perfect-tree links of nodes start..stop-1.

    Cells outside [start, stop) are never touched. The range is streamed
    through fixed scratch buffers of ``block_size`` elements, so auxiliary
    memory does not grow with the range. Both parities are handled in one
    pass; the leaf links are overwritten with NONE afterwards.
    """
    if stop <= start:
        return
    size = min(block_size, stop - start)
    offsets = np.arange(size, dtype=INDEX_DTYPE)
    idx = np.empty(size, dtype=INDEX_DTYPE)
    step = np.empty(size, dtype=INDEX_DTYPE)
    tmp = np.empty(size, dtype=INDEX_DTYPE)
    up_left = np.empty(size, dtype=np.bool_) if parent is not None else None
    if stats is not None:
        stats.scratch_bytes = max(
            stats.scratch_bytes,
            offsets.nbytes + idx.nbytes + step.nbytes + tmp.nbytes
            + (up_left.nbytes if up_left is not None else 0),
        )

    for lo in range(start, stop, size):
        hi = min(lo + size, stop)
        m = hi - lo
        j = idx[:m]
        k = step[:m]
        t = tmp[:m]
        np.add(offsets[:m], lo, out=j)
        pow2_trailing_array(j, k, t)  # k = 2**L(j)

        if parent is not None:
            mask = up_left[:m]
            np.left_shift(k, 1, out=t)
            np.bitwise_and(j, t, out=t)
            np.not_equal(t, 0, out=mask)
            p = parent[lo:hi]
            np.add(j, k, out=p)
            np.subtract(j, k, out=t)
            np.copyto(p, t, where=mask)

        np.right_shift(k, 1, out=k)  # 2**(L(j)-1), zero on leaves
        lft = left[lo:hi]
        rgt = right[lo:hi]
        np.subtract(j, k, out=lft)
        np.add(j, k, out=rgt)
        first_even = lo & 1
        lft[first_even::2] = NONE
        rgt[first_even::2] = NONE

        if stats is not None:
            stats.cells_written += m
    if stats is not None:
        stats.passes += 1


def glue(
    n: int,
    right: np.ndarray,
    parent: Optional[np.ndarray],
    stats: Optional[BuildStats] = None,
) -> int:
    """Sequential fix-up after the index loop; returns the root.

    Nulls the last node's right link, detaches the root's parent and walks
    the descending path from the root toward n-1, replacing every run of
    edges through missing nodes by a single edge.
    """
    last = n - 1
    right[last] = NONE
    t = root_index(n)
    if parent is not None:
        parent[t] = NONE

    offset = last - t
    stop = pow2_trailing(last)
    k = pow2_trailing(t)
    j = t
    while k > stop:
        k //= 2
        if (offset & k) == 0:
            k //= 2
            while (offset & k) == 0:
                k //= 2
            right[j] = j + k
            if parent is not None:
                parent[j + k] = j
            logger.debug(f"Glued edge {j} -> {j + k}")
        j += k
        if stats is not None:
            stats.glue_steps += 1
    return t


def build(n: int, opts: BuildOptions = DEFAULT_OPTIONS, stats: Optional[BuildStats] = None) -> TreeArrays:
    """Build the minimal-height BST over 0..n-1.

    Args:
        n: Node count, 0 <= n <= 2**63
        opts: Construction options
        stats: Optional counters to fill in

    Returns:
        Read-only TreeArrays with provenance FRESH

    Raises:
        CapacityError: if n > 2**63
    """
    check_count(n)
    if n == 0:
        return empty_tree(opts.store_parents)

    left, right, parent = allocate(n, opts)
    fill_range(left, right, parent, 0, n, resolve_block_size(opts), stats)
    root = glue(n, right, parent, stats)
    logger.info(f"Built tree with {n} nodes, root {root}")
    return TreeArrays(
        n=n, root=root, left=left, right=right, parent=parent, provenance=Provenance.FRESH
    ).lock()


def build_perfect(K: int, opts: BuildOptions = DEFAULT_OPTIONS, stats: Optional[BuildStats] = None) -> TreeArrays:
    """Build the perfect BST with K levels (2**K - 1 nodes).

    No link can point past the last node, so there is nothing to glue.

    Raises:
        CapacityError: if K > 62
    """
    if K < 0:
        raise ParameterError(f"Level count must be non-negative, got {K}")
    if K > MAX_PERFECT_LEVELS:
        raise CapacityError(f"Perfect trees are limited to {MAX_PERFECT_LEVELS} levels, got {K}")
    if K == 0:
        return empty_tree(opts.store_parents)

    n = (1 << K) - 1
    left, right, parent = allocate(n, opts)
    fill_range(left, right, parent, 0, n, resolve_block_size(opts), stats)
    root = (1 << msb(n)) - 1
    if parent is not None:
        parent[root] = NONE
    return TreeArrays(
        n=n, root=root, left=left, right=right, parent=parent, provenance=Provenance.FRESH
    ).lock()

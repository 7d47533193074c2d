"""
Parallel construction.

The index loop writes every cell from its own index only, so contiguous
ranges can be filled by independent workers. The glue walk touches cells
owned by arbitrary workers and runs once all of them have joined.
"""
import logging
from typing import Optional

from joblib import Parallel, delayed

from flatbst.builder import DEFAULT_OPTIONS, allocate, check_count, fill_range, glue, resolve_block_size
from flatbst.errors import ParameterError
from flatbst.types import BuildOptions, BuildStats, Provenance, TreeArrays, empty_tree

logger = logging.getLogger(__name__)


def partition(n: int, workers: int) -> list[tuple[int, int]]:
    """Split [0, n) into at most ``workers`` contiguous near-equal ranges.

    The remainder goes to the first ranges. Empty ranges are dropped.
    """
    if workers < 1:
        raise ParameterError(f"Worker count must be at least 1, got {workers}")
    parts = min(workers, n)
    if parts == 0:
        return []
    base, extra = divmod(n, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + base + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def build_parallel(
    n: int,
    opts: BuildOptions = DEFAULT_OPTIONS,
    workers: int = 1,
    stats: Optional[BuildStats] = None,
) -> TreeArrays:
    """Build the same arrays as ``build`` using ``workers`` threads.

    Raises:
        ParameterError: if workers < 1
        CapacityError: if n > 2**63
    """
    if workers < 1:
        raise ParameterError(f"Worker count must be at least 1, got {workers}")
    check_count(n)
    if n == 0:
        return empty_tree(opts.store_parents)

    left, right, parent = allocate(n, opts)
    block_size = resolve_block_size(opts)
    ranges = partition(n, workers)

    # Threads share the output buffers; numpy releases the GIL inside the ufuncs.
    Parallel(n_jobs=len(ranges), require="sharedmem")(
        delayed(fill_range)(left, right, parent, start, stop, block_size)
        for start, stop in ranges
    )
    if stats is not None:
        stats.cells_written += n
        stats.passes += 1

    root = glue(n, right, parent, stats)
    logger.info(f"Built tree with {n} nodes on {len(ranges)} workers, root {root}")
    return TreeArrays(
        n=n, root=root, left=left, right=right, parent=parent, provenance=Provenance.FRESH
    ).lock()

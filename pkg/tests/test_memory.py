import tracemalloc

import pytest

from flatbst.builder import build
from flatbst.completion import make_complete
from flatbst.types import BuildOptions, BuildStats

BLOCK = 4096
# scratch buffers plus interpreter noise
AUX_BOUND = 33 * BLOCK + (256 << 10)


def peak_aux_bytes(n: int, opts: BuildOptions, complete: bool = False) -> int:
    """Peak traced allocation during a build, minus the output arrays."""
    tracemalloc.start()
    try:
        tracemalloc.reset_peak()
        tree = build(n, opts)
        if complete:
            make_complete(tree)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    output = sum(a.nbytes for a in tree.arrays())
    return peak - output


class TestAuxiliaryMemory:
    @pytest.mark.parametrize("store_parents", [True, False])
    def test_constant_across_sizes(self, store_parents):
        opts = BuildOptions(store_parents=store_parents, block_size=BLOCK)
        peaks = [peak_aux_bytes(n, opts) for n in (1 << 10, BLOCK, 1 << 17, 1 << 20)]
        assert max(peaks) <= AUX_BOUND

    def test_completion_adds_nothing(self):
        opts = BuildOptions(block_size=BLOCK)
        assert peak_aux_bytes((1 << 20) - 5, opts, complete=True) <= AUX_BOUND

    def test_scratch_is_bounded_by_block(self):
        for n in (100, 1 << 16, 1 << 20):
            stats = BuildStats()
            build(n, BuildOptions(block_size=BLOCK), stats)
            assert 0 < stats.scratch_bytes <= 33 * BLOCK

    @pytest.mark.parametrize("store_parents", [True, False])
    def test_scratch_is_identical_once_a_block_fits(self, store_parents):
        opts = BuildOptions(store_parents=store_parents, block_size=BLOCK)
        scratch = set()
        for n in (BLOCK, BLOCK + 1, 1 << 17, (1 << 20) - 3, 1 << 20):
            stats = BuildStats()
            build(n, opts, stats)
            scratch.add(stats.scratch_bytes)
        assert scratch == {(33 if store_parents else 32) * BLOCK}

import pytest

from flatbst.bench import median_ns
from flatbst.builder import build
from flatbst.types import BuildOptions
from tests.test_memory import AUX_BOUND, BLOCK, peak_aux_bytes


@pytest.mark.slow
class TestLinearTime:
    def test_sixteen_times_the_nodes(self):
        opts = BuildOptions(store_parents=True)
        small = median_ns(lambda: build(1 << 20, opts), 5)
        large = median_ns(lambda: build(1 << 24, opts), 5)
        assert 8 <= large / small <= 32


@pytest.mark.slow
class TestLargeAuxiliaryMemory:
    def test_sixteen_million_nodes(self):
        opts = BuildOptions(store_parents=False, block_size=BLOCK)
        assert peak_aux_bytes(1 << 24, opts) <= AUX_BOUND

import pytest

from flatbst.builder import build
from flatbst.errors import ParameterError
from flatbst.parallel import build_parallel, partition
from flatbst.types import BuildOptions, BuildStats


class TestPartition:
    def test_covers_range_disjointly(self):
        for n in range(0, 200):
            for workers in range(1, 10):
                ranges = partition(n, workers)
                cells = [i for start, stop in ranges for i in range(start, stop)]
                assert cells == list(range(n))
                sizes = [stop - start for start, stop in ranges]
                if sizes:
                    assert max(sizes) - min(sizes) <= 1
                    assert sizes == sorted(sizes, reverse=True)

    def test_never_more_ranges_than_cells(self):
        assert partition(3, 8) == [(0, 1), (1, 2), (2, 3)]
        assert partition(0, 4) == []

    def test_rejects_zero_workers(self):
        with pytest.raises(ParameterError):
            partition(10, 0)


class TestBuildParallel:
    def test_small_example(self):
        assert build_parallel(10, workers=3).same_structure(build(10))

    def test_single_worker(self):
        for n in range(0, 500):
            assert build_parallel(n, workers=1).same_structure(build(n))

    def test_empty(self):
        tree = build_parallel(0, workers=4)
        assert tree.n == 0

    def test_zero_workers(self):
        with pytest.raises(ParameterError):
            build_parallel(10, workers=0)

    def test_odd_range_starts(self):
        opts = BuildOptions(block_size=64)
        for n in range(1, 700, 13):
            for workers in (2, 3, 5, 7):
                assert build_parallel(n, opts, workers=workers).same_structure(build(n))

    def test_without_parents(self):
        opts = BuildOptions(store_parents=False)
        tree = build_parallel(1000, opts, workers=4)
        assert tree.parent is None
        assert tree.same_structure(build(1000, opts))

    @pytest.mark.parametrize("n", [10**3, 10**5, 10**6])
    @pytest.mark.parametrize("workers", [1, 2, 4, 8])
    def test_determinism(self, n, workers):
        assert build_parallel(n, workers=workers).same_structure(build(n))

    def test_counters(self):
        stats = BuildStats()
        build_parallel(5000, workers=4, stats=stats)
        assert stats.cells_written == 5000
        assert stats.passes == 1
        assert stats.glue_steps <= 12

"""
Benchmark harness for the linear builder and the halving baseline.
"""
import logging
import statistics
import time
from typing import Callable, NamedTuple

from flatbst.builder import build
from flatbst.errors import CorruptTreeError, ParameterError
from flatbst.oracle import build_halving, validate
from flatbst.parallel import build_parallel
from flatbst.types import TreeArrays

logger = logging.getLogger(__name__)

ALGORITHMS = ("new", "halving", "both")
CSV_HEADER = ("algo", "n", "threads", "repeat", "median_ns")

# Timed runs must use at least this many repeats
MIN_REPEAT = 5


class BenchRow(NamedTuple):
    algo: str
    n: int
    threads: int
    repeat: int
    median_ns: int


def median_ns(fn: Callable[[], object], repeat: int) -> int:
    """Median wall time of ``repeat`` calls on the monotonic clock."""
    samples = []
    for _ in range(repeat):
        start = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - start)
    return int(statistics.median(samples))


def _builder(threads: int) -> Callable[[int], TreeArrays]:
    if threads > 1:
        return lambda n: build_parallel(n, workers=threads)
    return build


def precheck(n: int, algo: str, threads: int) -> None:
    """Verify the output of each configuration once, outside the timed loop.

    Raises:
        CorruptTreeError: if a tree fails validation or threaded output differs
    """
    if algo in ("new", "both"):
        sequential = build(n)
        if threads > 1 and not build_parallel(n, workers=threads).same_structure(sequential):
            raise CorruptTreeError(f"Parallel build on {threads} threads differs from sequential build")
        if not validate(sequential).ok:
            raise CorruptTreeError(f"Linear build failed validation at n={n}")
    if algo in ("halving", "both"):
        if not validate(build_halving(n)).ok:
            raise CorruptTreeError(f"Halving build failed validation at n={n}")


def run_benchmark(n: int, algo: str = "both", threads: int = 1, repeat: int = MIN_REPEAT) -> list[BenchRow]:
    """Time the requested builders; one row per algorithm.

    Raises:
        ParameterError: on n < 1, unknown algo, threads < 1 or repeat < MIN_REPEAT
    """
    if n < 1:
        raise ParameterError(f"Benchmark size must be at least 1, got {n}")
    if algo not in ALGORITHMS:
        raise ParameterError(f"Unknown algorithm '{algo}', expected one of {ALGORITHMS}")
    if threads < 1:
        raise ParameterError(f"Thread count must be at least 1, got {threads}")
    if repeat < MIN_REPEAT:
        raise ParameterError(f"Repeat must be at least {MIN_REPEAT}, got {repeat}")

    precheck(n, algo, threads)

    rows = []
    if algo in ("new", "both"):
        builder = _builder(threads)
        rows.append(BenchRow("new", n, threads, repeat, median_ns(lambda: builder(n), repeat)))
    if algo in ("halving", "both"):
        rows.append(BenchRow("halving", n, 1, repeat, median_ns(lambda: build_halving(n), repeat)))
    for row in rows:
        logger.info(f"Benchmark {row.algo} n={row.n} threads={row.threads}: median {row.median_ns} ns")
    return rows

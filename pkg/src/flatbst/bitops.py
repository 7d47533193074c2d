"""
Level and most-significant-bit arithmetic on node indices.

The level L(j) of node j is its distance to the nearest leaf in the perfect
tree that contains it. It equals the number of trailing one-bits of j and
does not depend on the tree size.
"""
import numpy as np

from flatbst.errors import CapacityError, EmptyTreeError, PreconditionError
from flatbst.types import MAX_NODES


def _check_index(j: int) -> None:
    if j < 0 or j >= MAX_NODES:
        raise PreconditionError(f"Index {j} outside [0, 2**63)")


def trailing_ones_level(j: int) -> int:
    """Level of node j: the count of trailing one-bits."""
    _check_index(j)
    return ((j + 1) & -(j + 1)).bit_length() - 1


def pow2_trailing(j: int) -> int:
    """2**L(j) via the isolate-lowest-set-bit identity on j+1."""
    _check_index(j)
    return (j + 1) & -(j + 1)


def pow2_trailing_complement(j: int) -> int:
    """2**L(j) via the same identity applied to ~j."""
    _check_index(j)
    return ~j & -(~j)


def msb(j: int) -> int:
    """Position of the most significant one-bit (bit 0 is least significant).

    Raises:
        PreconditionError: if j < 1 (zero has no set bit)
    """
    if j < 1:
        raise PreconditionError(f"msb is undefined for {j}")
    return j.bit_length() - 1


def root_index(n: int) -> int:
    """Root 2**M(n) - 1 of the tree built for n nodes.

    Raises:
        EmptyTreeError: if n == 0
        CapacityError: if n > 2**63
    """
    if n == 0:
        raise EmptyTreeError("An empty tree has no root")
    if n < 0:
        raise PreconditionError(f"Node count must be positive, got {n}")
    if n > MAX_NODES:
        raise CapacityError(f"Node count {n} exceeds the limit of 2**63")
    return (1 << msb(n)) - 1


# Portable loop versions. These are the reference the fast paths are checked against.

def trailing_ones_level_portable(j: int) -> int:
    _check_index(j)
    level = 0
    while j & 1:
        j >>= 1
        level += 1
    return level


def msb_portable(j: int) -> int:
    if j < 1:
        raise PreconditionError(f"msb is undefined for {j}")
    position = 0
    while j > 1:
        j >>= 1
        position += 1
    return position


def pow2_trailing_array(j: np.ndarray, out: np.ndarray, scratch: np.ndarray) -> np.ndarray:
    """Vectorized 2**L(j) written into ``out``; ``scratch`` is clobbered.

    All three arrays must share shape and the signed index dtype. No
    temporaries are allocated.
    """
    np.add(j, 1, out=out)
    np.negative(out, out=scratch)
    np.bitwise_and(out, scratch, out=out)
    return out

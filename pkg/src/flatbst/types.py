"""
Core data types: the flat tree arrays and the knobs used to build them.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

# Index dtype for every tree array. Valid indices live in [0, 2**63).
INDEX_DTYPE = np.int64

# "No node". Outside [0, N] for every admissible N.
NONE = -1

# Largest admissible node count.
MAX_NODES = 1 << 63


class Provenance(str, Enum):
    """How a TreeArrays instance was produced"""
    FRESH = "fresh_algorithm2"
    COMPLETED = "completed"
    FOREIGN = "foreign"


@dataclass(frozen=True)
class BuildOptions:
    """Construction options.

    store_parents: allocate and fill the parent array. The structure never
        depends on it, so it can be dropped when only descent is needed.
    block_size: scratch buffer length for the streamed index loop; None means
        FLATBST_BLOCK_SIZE from the settings.
    """
    store_parents: bool = True
    block_size: Optional[int] = None


@dataclass
class BuildStats:
    """Operation counters filled in by builders and the completion pass."""
    cells_written: int = 0
    passes: int = 0
    glue_steps: int = 0
    rotations: int = 0
    scratch_bytes: int = 0


@dataclass(eq=False)
class TreeArrays:
    """A binary search tree over the ranks 0..n-1 stored as index arrays.

    Node j carries the j-th smallest key. Absent links hold NONE.
    """
    n: int
    root: int
    left: np.ndarray
    right: np.ndarray
    parent: Optional[np.ndarray] = None
    provenance: Provenance = Provenance.FOREIGN

    @property
    def locked(self) -> bool:
        """True when the index arrays are read-only."""
        return not any(arr.flags.writeable for arr in self.arrays())

    @property
    def has_parents(self) -> bool:
        return self.parent is not None

    def arrays(self) -> list[np.ndarray]:
        out = [self.left, self.right]
        if self.parent is not None:
            out.append(self.parent)
        return out

    def lock(self) -> "TreeArrays":
        """Make the index arrays read-only."""
        for arr in self.arrays():
            arr.setflags(write=False)
        return self

    def unlock(self) -> "TreeArrays":
        for arr in self.arrays():
            arr.setflags(write=True)
        return self

    def copy(self) -> "TreeArrays":
        """Writable deep copy with the same provenance."""
        return TreeArrays(
            n=self.n,
            root=self.root,
            left=self.left.copy(),
            right=self.right.copy(),
            parent=None if self.parent is None else self.parent.copy(),
            provenance=self.provenance,
        )

    def same_structure(self, other: "TreeArrays", *, parents: bool = True) -> bool:
        """Element-wise equality of root and arrays."""
        if self.n != other.n or self.root != other.root:
            return False
        if not (np.array_equal(self.left, other.left) and np.array_equal(self.right, other.right)):
            return False
        if parents:
            if (self.parent is None) != (other.parent is None):
                return False
            if self.parent is not None and not np.array_equal(self.parent, other.parent):
                return False
        return True

    def __repr__(self) -> str:
        return (
            f"<TreeArrays(n={self.n}, root={self.root}, "
            f"parents={self.has_parents}, provenance='{self.provenance.value}')>"
        )


def empty_tree(store_parents: bool = True, provenance: Provenance = Provenance.FRESH) -> TreeArrays:
    """The tree with no nodes."""
    return TreeArrays(
        n=0,
        root=NONE,
        left=np.empty(0, dtype=INDEX_DTYPE),
        right=np.empty(0, dtype=INDEX_DTYPE),
        parent=np.empty(0, dtype=INDEX_DTYPE) if store_parents else None,
        provenance=provenance,
    ).lock()

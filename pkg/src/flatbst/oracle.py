"""
Independent baselines and structural validators.

Nothing here is used to build trees; it exists to check them. The halving
builder is the classic recursive midpoint construction, ``validate`` checks a
tree level by level with numpy, and ``lemma1_missing_edges`` checks where the
dangling links of the plain perfect-tree formulas can occur.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, NamedTuple

import numpy as np

from flatbst.bitops import msb, pow2_trailing_array, root_index
from flatbst.builder import check_count, parent_rule
from flatbst.errors import CapacityError, CorruptTreeError, EmptyTreeError, LocalityError, PreconditionError
from flatbst.schemas import ValidationReport, Violation, ViolationKind
from flatbst.types import INDEX_DTYPE, NONE, Provenance, TreeArrays

logger = logging.getLogger(__name__)

# Cap on diagnostics collected per report
MAX_VIOLATIONS = 1000


###########################
# Halving baseline
###########################

def build_halving(n: int) -> TreeArrays:
    """Recursive midpoint construction over 0..n-1 (provenance FOREIGN)."""
    check_count(n)
    try:
        left = [NONE] * n
        right = [NONE] * n
        parent = [NONE] * n
    except (MemoryError, OverflowError) as e:
        raise CapacityError(f"Cannot allocate halving lists for {n} nodes: {e}") from e

    def halve(lo: int, hi: int, up: int) -> int:
        if lo > hi:
            return NONE
        mid = (lo + hi) // 2
        parent[mid] = up
        left[mid] = halve(lo, mid - 1, mid)
        right[mid] = halve(mid + 1, hi, mid)
        return mid

    root = halve(0, n - 1, NONE)
    return TreeArrays(
        n=n,
        root=root,
        left=np.array(left, dtype=INDEX_DTYPE),
        right=np.array(right, dtype=INDEX_DTYPE),
        parent=np.array(parent, dtype=INDEX_DTYPE),
        provenance=Provenance.FOREIGN,
    ).lock()


###########################
# Traversal and level profile
###########################

@dataclass
class LevelProfile:
    """Node count per depth, root at depth 0."""
    counts: list[int] = field(default_factory=list)

    @property
    def height(self) -> int:
        """Height in edges; -1 for the empty tree."""
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def upper_levels_full(self) -> bool:
        return all(c == 1 << d for d, c in enumerate(self.counts[:-1]))

    def is_perfect(self) -> bool:
        return all(c == 1 << d for d, c in enumerate(self.counts))


def inorder(tree: TreeArrays) -> Iterator[int]:
    """Yield node indices in symmetric order.

    Raises:
        CorruptTreeError: if more than n nodes would be visited
    """
    stack: list[int] = []
    j = tree.root
    seen = 0
    while stack or j != NONE:
        while j != NONE:
            stack.append(j)
            j = int(tree.left[j])
        j = stack.pop()
        seen += 1
        if seen > tree.n:
            raise CorruptTreeError("In-order walk visited more than n nodes")
        yield j
        j = int(tree.right[j])


def level_profile(tree: TreeArrays) -> LevelProfile:
    """Count nodes per depth.

    Raises:
        CorruptTreeError: if a node is reached twice or a link is out of range
    """
    if tree.n == 0:
        return LevelProfile([])
    visited = np.zeros(tree.n, dtype=np.bool_)
    frontier = np.array([tree.root], dtype=INDEX_DTYPE)
    counts = []
    while frontier.size:
        if frontier.min() < 0 or frontier.max() >= tree.n:
            raise CorruptTreeError("Link points outside the node range")
        if visited[frontier].any() or np.unique(frontier).size != frontier.size:
            raise CorruptTreeError(f"Cycle detected at depth {len(counts)}")
        visited[frontier] = True
        counts.append(int(frontier.size))
        children = np.concatenate((tree.left[frontier], tree.right[frontier]))
        frontier = children[children != NONE]
    return LevelProfile(counts)


def height_of(tree: TreeArrays) -> int:
    """Longest root-to-leaf path in edges.

    Raises:
        EmptyTreeError: if the tree has no nodes
        CorruptTreeError: on cycles
    """
    if tree.n == 0:
        raise EmptyTreeError("An empty tree has no height")
    return level_profile(tree).height


def minimal_height(n: int) -> int:
    """ceil(log2(n+1)) - 1, i.e. -1 for the empty tree."""
    return n.bit_length() - 1


###########################
# Validation
###########################

def validate(tree: TreeArrays) -> ValidationReport:
    """Check order, links, rootedness and height; problems land in the report."""
    n = tree.n
    violations: list[Violation] = []

    def flag(node, kind: ViolationKind) -> None:
        if len(violations) < MAX_VIOLATIONS:
            violations.append(Violation(node=int(node), kind=kind))

    arrays = [tree.left, tree.right] + ([tree.parent] if tree.parent is not None else [])
    if any(len(arr) != n for arr in arrays):
        flag(NONE, ViolationKind.SHAPE)
        return ValidationReport(
            n=n, bst_order_ok=False, links_consistent=False, single_root=False,
            height_edges=-1, minimal_height_ok=False, upper_levels_full=False,
            violations=violations,
        )

    if n == 0:
        root_ok = tree.root == NONE
        if not root_ok:
            flag(tree.root, ViolationKind.ROOT)
        return ValidationReport(
            n=0, bst_order_ok=True, links_consistent=True, single_root=root_ok,
            height_edges=-1, minimal_height_ok=True, upper_levels_full=True,
            violations=violations,
        )

    order_ok = links_ok = root_ok = True
    nodes = np.arange(n, dtype=INDEX_DTYPE)
    left = np.asarray(tree.left, dtype=INDEX_DTYPE)
    right = np.asarray(tree.right, dtype=INDEX_DTYPE)

    # Out-of-range links are reported and then treated as absent.
    bad = ((left != NONE) & ((left < 0) | (left >= n))) | ((right != NONE) & ((right < 0) | (right >= n)))
    if bad.any():
        links_ok = False
        for j in nodes[bad]:
            flag(j, ViolationKind.LINK)
        left = np.where((left < 0) | (left >= n), NONE, left)
        right = np.where((right < 0) | (right >= n), NONE, right)

    root = tree.root
    if not 0 <= root < n:
        flag(root, ViolationKind.ROOT)
        return ValidationReport(
            n=n, bst_order_ok=False, links_consistent=links_ok, single_root=False,
            height_edges=-1, minimal_height_ok=False, upper_levels_full=False,
            violations=violations,
        )

    # Every node but the root has exactly one incoming child link.
    children = np.concatenate((left[left != NONE], right[right != NONE]))
    indegree = np.bincount(children, minlength=n)
    if indegree[root] != 0:
        root_ok = False
        flag(root, ViolationKind.ROOT)
    orphans = (indegree == 0) & (nodes != root)
    if orphans.any():
        root_ok = False
        for j in nodes[orphans]:
            flag(j, ViolationKind.ROOT)
    shared = indegree > 1
    if shared.any():
        links_ok = False
        for j in nodes[shared]:
            flag(j, ViolationKind.LINK)

    if tree.parent is not None:
        parent = np.asarray(tree.parent, dtype=INDEX_DTYPE)
        for child_links in (left, right):
            has = child_links != NONE
            owners = nodes[has]
            mismatch = parent[child_links[has]] != owners
            if mismatch.any():
                links_ok = False
                for j in child_links[has][mismatch]:
                    flag(j, ViolationKind.LINK)
        if parent[root] != NONE:
            links_ok = False
            flag(root, ViolationKind.LINK)
        parentless = nodes[parent == NONE]
        if parentless.size != 1 or parentless[0] != root:
            root_ok = False
            for j in parentless[parentless != root]:
                flag(j, ViolationKind.ROOT)

    # Level-by-level walk carrying the open interval each subtree must fit in.
    visited = np.zeros(n, dtype=np.bool_)
    frontier = np.array([root], dtype=INDEX_DTYPE)
    lo = np.array([-1], dtype=INDEX_DTYPE)
    hi = np.array([n], dtype=INDEX_DTYPE)
    profile: list[int] = []
    while frontier.size:
        _, first = np.unique(frontier, return_index=True)
        keep = np.zeros(frontier.size, dtype=np.bool_)
        keep[first] = True
        keep &= ~visited[frontier]
        if not keep.all():
            order_ok = False
            for j in frontier[~keep]:
                flag(j, ViolationKind.CYCLE)
            frontier, lo, hi = frontier[keep], lo[keep], hi[keep]
            if not frontier.size:
                break
        visited[frontier] = True
        profile.append(int(frontier.size))

        lc = left[frontier]
        rc = right[frontier]
        has_l = lc != NONE
        has_r = rc != NONE
        misplaced = (has_l & ((lc <= lo) | (lc >= frontier))) | (has_r & ((rc <= frontier) | (rc >= hi)))
        if misplaced.any():
            order_ok = False
            for j in frontier[misplaced]:
                flag(j, ViolationKind.ORDER)

        frontier, lo, hi = (
            np.concatenate((lc[has_l], rc[has_r])),
            np.concatenate((lo[has_l], frontier[has_r])),
            np.concatenate((frontier[has_l], hi[has_r])),
        )

    if not visited.all():
        order_ok = False
        for j in nodes[~visited]:
            flag(j, ViolationKind.UNREACHABLE)

    height = len(profile) - 1
    height_ok = height == minimal_height(n)
    if not height_ok:
        flag(root, ViolationKind.HEIGHT)

    report = ValidationReport(
        n=n,
        bst_order_ok=order_ok,
        links_consistent=links_ok,
        single_root=root_ok,
        height_edges=height,
        minimal_height_ok=height_ok,
        upper_levels_full=LevelProfile(profile).upper_levels_full(),
        level_profile=profile,
        violations=violations,
    )
    logger.debug(f"Validated tree with {n} nodes: ok={report.ok}, {len(violations)} violations")
    return report


###########################
# Dangling links of the perfect-tree formulas
###########################

class EdgeKind(str, Enum):
    UP = "up"
    DOWN_RIGHT = "down_right"


class MissingEdge(NamedTuple):
    source: int
    target: int
    kind: EdgeKind
    exempt: bool


def ascending_path(n: int) -> list[int]:
    """Nodes from n-1 up to the root in the perfect tree of the same height."""
    if n < 1:
        raise PreconditionError(f"Need at least one node, got {n}")
    top = root_index(n)
    j = n - 1
    path = [j]
    while j != top:
        j = parent_rule(j)
        path.append(j)
        if len(path) > msb(n) + 2:
            raise LocalityError(f"Ascending path from {n - 1} never reaches root {top}")
    return path


def lemma1_missing_edges(n: int, *, check: bool = True) -> list[MissingEdge]:
    """Links the plain perfect-tree formulas point past n-1.

    The root's up link is dropped because the builder clears it. The
    down-right link of node n-1 is marked exempt; every other edge must lie
    on ``ascending_path(n)``.

    Raises:
        LocalityError: if ``check`` and an edge lies off the path
    """
    if n < 1:
        raise PreconditionError(f"Need at least one node, got {n}")
    check_count(n)
    last = n - 1
    top = root_index(n)

    j = np.arange(n, dtype=INDEX_DTYPE)
    k = np.empty(n, dtype=INDEX_DTYPE)
    scratch = np.empty(n, dtype=INDEX_DTYPE)
    pow2_trailing_array(j, k, scratch)
    up = np.where((j & (k << 1)) == 0, j + k, j - k)
    half = k >> 1
    down_right = j + half

    up_missing = (up > last) & (j != top)
    down_missing = (half > 0) & (down_right > last)

    edges = []
    for source in j[up_missing | down_missing]:
        source = int(source)
        if up_missing[source]:
            edges.append(MissingEdge(source, int(up[source]), EdgeKind.UP, False))
        if down_missing[source]:
            edges.append(MissingEdge(source, int(down_right[source]), EdgeKind.DOWN_RIGHT, source == last))

    if check:
        check_edge_locality(n, edges)
    return edges


def check_edge_locality(n: int, edges: list[MissingEdge]) -> None:
    """Raises LocalityError unless every non-exempt edge lies on the ascending path."""
    on_path = set(ascending_path(n))
    for edge in edges:
        if edge.exempt:
            continue
        if edge.source not in on_path or edge.target not in on_path:
            raise LocalityError(
                f"Edge {edge.source} -> {edge.target} ({edge.kind.value}) is off the ascending path from {n - 1}"
            )

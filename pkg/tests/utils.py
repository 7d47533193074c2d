from bisect import bisect_left

from flatbst.oracle import minimal_height, validate
from flatbst.types import NONE, TreeArrays


def assert_all_tree_qualities(tree: TreeArrays):
    report = validate(tree)
    assert report.violations == []
    assert report.bst_order_ok
    assert report.links_consistent
    assert report.single_root
    assert report.minimal_height_ok
    assert report.height_edges == minimal_height(tree.n)
    return report


###########################
# Reference oracles
###########################

def naive_trailing_ones(j: int) -> int:
    count = 0
    while j % 2 == 1:
        j //= 2
        count += 1
    return count


def naive_msb(j: int) -> int:
    position = -1
    while j:
        j //= 2
        position += 1
    return position


def classic_binary_search(keys, target):
    """(found, index) via bisect; index is the leftmost match on a hit."""
    i = bisect_left(keys, target)
    if i < len(keys) and keys[i] == target:
        return True, i
    return False, NONE


def reachable(tree: TreeArrays) -> list[int]:
    """Nodes reachable from the root, preorder."""
    out = []
    stack = [tree.root] if tree.n else []
    while stack:
        j = stack.pop()
        out.append(j)
        for child in (int(tree.right[j]), int(tree.left[j])):
            if child != NONE:
                stack.append(child)
    return out


def children(tree: TreeArrays, j: int) -> tuple:
    def none_or_int(v):
        v = int(v)
        return None if v == NONE else v

    return none_or_int(tree.left[j]), none_or_int(tree.right[j])


###########################
# Sample trees
###########################

# Perfect tree on 15 nodes: node -> (left, right)
FIFTEEN_NODE_TREE = {
    7: (3, 11),
    3: (1, 5),
    11: (9, 13),
    1: (0, 2),
    5: (4, 6),
    9: (8, 10),
    13: (12, 14),
}

SAMPLE_KEYS = [10, 20, 30, 40, 50]

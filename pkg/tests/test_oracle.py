import numpy as np
import pytest

from flatbst.builder import build
from flatbst.completion import make_complete
from flatbst.errors import CorruptTreeError, EmptyTreeError, LocalityError, PreconditionError
from flatbst.oracle import (
    EdgeKind,
    MissingEdge,
    ascending_path,
    build_halving,
    check_edge_locality,
    height_of,
    inorder,
    lemma1_missing_edges,
    level_profile,
    validate,
)
from flatbst.schemas import ViolationKind
from flatbst.types import INDEX_DTYPE, NONE, BuildOptions, Provenance, TreeArrays
from tests.utils import assert_all_tree_qualities, children


def make_tree(root, left, right, parent=None):
    return TreeArrays(
        n=len(left),
        root=root,
        left=np.array(left, dtype=INDEX_DTYPE),
        right=np.array(right, dtype=INDEX_DTYPE),
        parent=None if parent is None else np.array(parent, dtype=INDEX_DTYPE),
        provenance=Provenance.FOREIGN,
    )


class TestBuildHalving:
    def test_three_nodes(self):
        tree = build_halving(3)
        assert tree.root == 1
        assert children(tree, 1) == (0, 2)

    def test_single_node(self):
        tree = build_halving(1)
        assert tree.root == 0
        assert children(tree, 0) == (None, None)

    def test_five_nodes(self):
        tree = build_halving(5)
        assert tree.root == 2
        assert children(tree, 2) == (0, 3)
        assert children(tree, 0) == (None, 1)
        assert children(tree, 3) == (None, 4)
        assert tree.provenance is Provenance.FOREIGN

    def test_same_height_as_linear_build(self):
        for n in range(1, 4097):
            halving = assert_all_tree_qualities(build_halving(n))
            linear = validate(build(n))
            assert halving.height_edges == linear.height_edges


class TestValidate:
    def test_fresh_tree(self):
        report = validate(build(10))
        assert report.ok
        assert report.height_edges == 3
        assert not report.upper_levels_full
        assert report.violations == []

    def test_completed_tree(self):
        report = validate(make_complete(build(10)))
        assert report.ok
        assert report.upper_levels_full
        assert report.level_profile == [1, 2, 4, 3]

    def test_all_builders_exhaustively(self):
        for n in range(0, 4097):
            for tree in (build(n), build_halving(n), make_complete(build(n))):
                report = validate(tree)
                assert report.bst_order_ok, n
                assert report.links_consistent, n
                assert report.single_root, n
                assert report.minimal_height_ok, n

    def test_misordered_child(self):
        tree = make_tree(1, [NONE, 2, NONE], [NONE, 0, NONE], [1, NONE, 1])
        report = validate(tree)
        assert not report.bst_order_ok
        assert any(v.node == 1 and v.kind is ViolationKind.ORDER for v in report.violations)
        assert not report.ok

    def test_broken_parent_link(self):
        tree = make_tree(1, [NONE, 0, NONE], [NONE, 2, NONE], [1, NONE, 0])
        report = validate(tree)
        assert report.bst_order_ok
        assert not report.links_consistent
        assert any(v.node == 2 and v.kind is ViolationKind.LINK for v in report.violations)

    def test_missing_parents_are_tolerated(self):
        report = validate(build(100, BuildOptions(store_parents=False)))
        assert report.ok

    def test_cycle(self):
        tree = make_tree(1, [NONE, 0, 1], [NONE, 2, NONE])
        report = validate(tree)
        assert not report.ok
        kinds = {v.kind for v in report.violations}
        assert ViolationKind.CYCLE in kinds or ViolationKind.ORDER in kinds

    def test_unreachable_node(self):
        tree = make_tree(1, [NONE, 0, NONE], [NONE, NONE, NONE])
        report = validate(tree)
        assert not report.single_root
        assert not report.bst_order_ok
        assert any(v.node == 2 and v.kind is ViolationKind.UNREACHABLE for v in report.violations)

    def test_height_not_minimal(self):
        tree = make_tree(0, [NONE, NONE, NONE], [1, 2, NONE])
        report = validate(tree)
        assert report.bst_order_ok
        assert not report.minimal_height_ok
        assert report.height_edges == 2
        assert not report.ok

    def test_link_out_of_range(self):
        tree = make_tree(0, [NONE], [7])
        report = validate(tree)
        assert not report.links_consistent

    def test_shape_mismatch(self):
        tree = make_tree(0, [NONE, NONE], [NONE])
        tree.n = 2
        report = validate(tree)
        assert report.violations[0].kind is ViolationKind.SHAPE

    def test_empty(self):
        report = validate(build(0))
        assert report.ok
        assert report.height_edges == -1

    def test_violations_empty_iff_ok(self):
        good = validate(build(33))
        bad = validate(make_tree(1, [NONE, 2, NONE], [NONE, 0, NONE]))
        assert good.ok and not good.violations
        assert not bad.ok and bad.violations


class TestHeightAndProfile:
    def test_examples(self):
        assert height_of(build(15)) == 3
        assert height_of(build(1)) == 0
        assert height_of(build(10)) == 3

    def test_empty(self):
        with pytest.raises(EmptyTreeError):
            height_of(build(0))

    def test_cycle(self):
        tree = make_tree(0, [NONE, NONE], [1, 0])
        with pytest.raises(CorruptTreeError):
            height_of(tree)

    def test_profile_sums_to_n(self):
        for n in range(1, 600):
            profile = level_profile(build(n))
            assert profile.total == n
            assert profile.counts[0] == 1

    def test_inorder_rejects_cycles(self):
        tree = make_tree(0, [NONE, NONE], [1, 0])
        with pytest.raises(CorruptTreeError):
            list(inorder(tree))


class TestMissingEdges:
    def test_perfect_size_has_no_missing_edges(self):
        assert lemma1_missing_edges(15) == []

    def test_ten_nodes(self):
        assert lemma1_missing_edges(10) == [
            MissingEdge(7, 11, EdgeKind.DOWN_RIGHT, False),
            MissingEdge(9, 11, EdgeKind.UP, False),
            MissingEdge(9, 10, EdgeKind.DOWN_RIGHT, True),
        ]
        assert ascending_path(10) == [9, 11, 7]

    def test_five_nodes(self):
        assert lemma1_missing_edges(5) == [
            MissingEdge(3, 5, EdgeKind.DOWN_RIGHT, False),
            MissingEdge(4, 5, EdgeKind.UP, False),
        ]
        assert ascending_path(5) == [4, 5, 3]

    def test_locality_holds_exhaustively(self):
        for n in range(1, 2049):
            lemma1_missing_edges(n)

    def test_glue_repairs_every_missing_edge(self):
        for n in range(1, 1025):
            tree = build(n)
            for edge in lemma1_missing_edges(n):
                assert edge.target >= n
                if edge.kind is EdgeKind.DOWN_RIGHT:
                    assert tree.right[edge.source] != edge.target
                else:
                    assert tree.parent[edge.source] != edge.target

    def test_checker_catches_off_path_edge(self):
        with pytest.raises(LocalityError):
            check_edge_locality(10, [MissingEdge(3, 11, EdgeKind.UP, False)])

    def test_needs_a_node(self):
        with pytest.raises(PreconditionError):
            lemma1_missing_edges(0)

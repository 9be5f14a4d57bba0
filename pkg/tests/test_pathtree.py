import numpy as np
import pytest

from setdelta import (
    LabeledTree,
    build_hierarchy,
    label_rank,
    label_select,
    nearest_labeled_ancestor,
    path_count_range,
    path_select,
)
from setdelta.pathtree import TreeBuilder, ceil_log2, extract

from conftest import random_labeled_tree


def chain_tree(labels):
    tb = TreeBuilder()
    tb.chain(0, labels)
    return tb.build()


def test_ceil_log2():
    assert [ceil_log2(x) for x in [1, 2, 3, 4, 5, 8, 9]] == [0, 1, 2, 2, 3, 3, 4]


def test_tree_invariants():
    t = chain_tree([3, 1])
    assert t.depth.tolist() == [0, 1, 2]
    assert t.path_labels(2) == [3, 1]
    with pytest.raises(ValueError, match="unknown node"):
        t.path_labels(5)
    with pytest.raises(ValueError):
        LabeledTree([-1, 2], [0, 1])  # parent after child


def test_preorder_is_a_valid_ordering():
    tb = TreeBuilder()
    a = tb.chain(0, [1, 2])
    tb.chain(0, [3])
    tb.chain(a, [4])
    t = tb.build()
    pre = t.preorder.tolist()
    assert sorted(pre) == list(range(t.n))
    for v in range(1, t.n):
        assert pre[t.parent[v]] < pre[v]


def test_hierarchy_levels_for_chain_example():
    # chain with labels [3, 1] over universe 4: bits at the top are [1, 0]
    h = build_hierarchy(chain_tree([3, 1]), 4)
    top = h.levels[(1, 4)]
    assert top.cnt1.tolist() == [0, 1, 1]
    assert top.cnt0.tolist() == [0, 0, 1]
    left = h.levels[(1, 2)]
    right = h.levels[(3, 4)]
    assert left.orig.tolist() == [0, 2]  # the node labeled 1
    assert right.orig.tolist() == [0, 1]  # the node labeled 3


def test_hierarchy_single_sided_when_labels_equal():
    h = build_hierarchy(chain_tree([2, 2, 2]), 4)
    assert (1, 2) in h.levels
    assert (3, 4) not in h.levels  # empty side stays a virtual root-only tree


def test_hierarchy_negative_chain_shape():
    # one deletion-style chain under the root, universe 4
    h = build_hierarchy(chain_tree([1]), 4)
    assert h.levels[(1, 2)].orig.tolist() == [0, 1]
    assert (3, 4) not in h.levels


def test_nearest_examples():
    t = chain_tree([2, 3, 2])
    h = build_hierarchy(t, 4)
    assert nearest_labeled_ancestor(h, 3, 2) == 3  # inclusive: v itself
    assert nearest_labeled_ancestor(h, 2, 2) == 1
    assert nearest_labeled_ancestor(h, 3, 4) is None
    assert nearest_labeled_ancestor(h, 0, 2) is None
    with pytest.raises(ValueError, match="unknown node"):
        nearest_labeled_ancestor(h, 9, 2)


def test_path_count_range_examples():
    t = chain_tree([2, 3, 4])
    h = build_hierarchy(t, 4)
    assert path_count_range(h, 3, 1, 3) == 2
    assert path_count_range(h, 3, 1, 4) == 3  # full range counts the depth
    assert path_count_range(h, 0, 1, 4) == 0  # root path is empty
    with pytest.raises(ValueError, match="invalid label range"):
        path_count_range(h, 3, 3, 2)
    with pytest.raises(ValueError, match="invalid label range"):
        path_count_range(h, 3, 0, 2)


def test_path_select_examples():
    t = chain_tree([5, 2, 2])
    h = build_hierarchy(t, 8)
    assert path_select(h, 3, 1) == 2
    assert path_select(h, 3, 2) == 2
    assert path_select(h, 3, 3) == 5  # i = depth: the maximum label
    single = build_hierarchy(chain_tree([7]), 8)
    assert path_select(single, 1, 1) == 7
    with pytest.raises(ValueError, match="rank out of range"):
        path_select(h, 3, 0)
    with pytest.raises(ValueError, match="rank out of range"):
        path_select(h, 3, 4)


def test_label_rank_and_select():
    t = chain_tree([2, 9, 2])
    h = build_hierarchy(t, 16)
    assert label_rank(h, 3, 2) == 2
    assert label_rank(h, 3, 5) == 0
    assert label_select(h, 3, 2, 1) == 1  # highest occurrence first
    assert label_select(h, 3, 2, 2) == 3
    assert label_select(h, 3, 9, 1) == 2
    with pytest.raises(ValueError, match="rank out of range"):
        label_select(h, 3, 2, 3)


def test_descent_depth_is_exactly_ceil_log2():
    rng = np.random.default_rng(5)
    for universe in (1, 2, 5, 8, 13, 64):
        t = random_labeled_tree(rng, 60, universe)
        h = build_hierarchy(t, universe)
        h.descents = h.levels_descended = 0
        want = ceil_log2(universe)
        h.count_prefix(30, universe)
        h.count_prefix(30, 0)
        h.select(30, 1) if t.depth[30] else None
        h.nearest(30, 1)
        assert h.levels_descended == h.descents * want


def test_mapping_soundness_on_random_trees():
    # inclusive beta-counts survive the image into each child tree
    rng = np.random.default_rng(7)
    t = random_labeled_tree(rng, 120, 13)
    h = build_hierarchy(t, 13)
    for (a, b), lvl in h.levels.items():
        if a == b:
            continue
        m = (a + b) >> 1
        for loc in range(lvl.orig.size):
            for bit, img, cnt in ((0, lvl.img0, lvl.cnt0), (1, lvl.img1, lvl.cnt1)):
                child = h.levels.get((a, m) if bit == 0 else (m + 1, b))
                image_depth = int(child.depth[img[loc]]) if child is not None else 0
                assert image_depth == int(cnt[loc])


def test_extraction_size_bound():
    rng = np.random.default_rng(11)
    t = random_labeled_tree(rng, 200, 16)
    h = build_hierarchy(t, 16)
    for (a, b), lvl in h.levels.items():
        if a == b:
            continue
        m = (a + b) >> 1
        left = h.levels.get((a, m))
        right = h.levels.get((m + 1, b))
        n0 = left.orig.size if left is not None else 1
        n1 = right.orig.size if right is not None else 1
        assert n0 + n1 <= lvl.orig.size + 2


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_queries_match_naive_walks(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 500))
    universe = int(rng.integers(1, 64))
    t = random_labeled_tree(rng, n, universe)
    h = build_hierarchy(t, universe)
    nodes = rng.integers(0, n, size=30)
    for v in (int(x) for x in nodes):
        path = t.path_labels(v)
        ordered = sorted(path)
        for _ in range(6):
            a = int(rng.integers(1, universe + 1))
            b = int(rng.integers(a, universe + 1))
            assert path_count_range(h, v, a, b) == sum(1 for x in path if a <= x <= b)
        for i in range(1, len(path) + 1):
            assert path_select(h, v, i) == ordered[i - 1]
        alpha = int(rng.integers(1, universe + 1))
        occ = [d + 1 for d, x in enumerate(path) if x == alpha]
        assert label_rank(h, v, alpha) == len(occ)
        walk = v
        deepest = None
        while walk != 0:
            if int(t.label[walk]) == alpha and deepest is None:
                deepest = walk
            walk = int(t.parent[walk])
        assert nearest_labeled_ancestor(h, v, alpha) == deepest
        for j, want_depth in enumerate(occ, start=1):
            got = label_select(h, v, alpha, j)
            assert int(t.depth[got]) == want_depth and int(t.label[got]) == alpha


def test_extract_keeps_ancestor_order():
    tb = TreeBuilder()
    a = tb.chain(0, [5, 2])
    tb.chain(a, [5, 7])
    t = tb.build()
    sub, orig, image = extract(t, t.label == 5)
    assert sub.n == 3
    assert [t.label[o] for o in orig[1:]] == [5, 5]
    # image points at the deepest kept ancestor-or-self
    assert image[0] == 0 and image[1] == 1 and image[2] == 1
    assert image[3] == 2 and image[4] == 2

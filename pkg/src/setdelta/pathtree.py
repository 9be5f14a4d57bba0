"""Labeled rooted trees with path counting, selection and nearest-label queries.

The label universe ``[1..L]`` is padded to a power of two and halved level by
level.  For each interval a 0/1-labeled tree is carved out of its parent tree
by extraction (deleted nodes splice their children into their parent), and
every node stores the inclusive count of 0- and 1-labeled nodes on its root
path plus a direct image in each child tree.  All root-path queries then
descend exactly ``ceil(log2 L)`` levels doing constant work per level.

The representation is deliberately explicit (a few machine words per node per
level) rather than succinct; for N nodes it occupies O(N log L) words.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def ceil_log2(x: int) -> int:
    return max(0, int(x - 1).bit_length()) if x >= 1 else 0


class LabeledTree:
    """Ordinal tree with one integer label per non-root node.

    Node 0 is the root; parents always precede children in node id order.
    """

    __slots__ = ("parent", "label", "depth", "preorder", "n")

    def __init__(self, parent, label):
        parent = np.asarray(parent, np.int32)
        label = np.asarray(label, np.int32)
        n = parent.size
        if n == 0 or parent[0] != -1 or label.size != n:
            raise ValueError("malformed tree arrays")
        if n > 1:
            if np.any(parent[1:] < 0) or np.any(parent[1:] >= np.arange(1, n)):
                raise ValueError("parents must precede children")
            if np.any(label[1:] < 1):
                raise ValueError("labels must be positive")
        self.parent = parent
        self.label = label
        self.n = int(n)
        depth = np.zeros(n, np.int32)
        for v in range(1, n):
            depth[v] = depth[parent[v]] + 1
        self.depth = depth
        children: list[list[int]] = [[] for _ in range(n)]
        for v in range(1, n):
            children[parent[v]].append(v)
        preorder = np.zeros(n, np.int32)
        stack = [0]
        t = 0
        while stack:
            v = stack.pop()
            preorder[v] = t
            t += 1
            stack.extend(reversed(children[v]))
        self.preorder = preorder

    def path_labels(self, v: int) -> list[int]:
        """Labels on the root-to-v path, v inclusive (naive parent walk)."""
        if not 0 <= v < self.n:
            raise ValueError("unknown node")
        out = []
        while v != 0:
            out.append(int(self.label[v]))
            v = int(self.parent[v])
        out.reverse()
        return out


class TreeBuilder:
    """Incremental construction by appending labeled chains under anchors."""

    def __init__(self):
        self._parent = [-1]
        self._label = [0]

    @property
    def n(self) -> int:
        return len(self._parent)

    def chain(self, anchor: int, labels) -> int:
        cur = anchor
        for x in labels:
            self._parent.append(cur)
            self._label.append(int(x))
            cur = len(self._parent) - 1
        return cur

    def build(self) -> LabeledTree:
        return LabeledTree(self._parent, self._label)


def extract(tree: LabeledTree, keep: np.ndarray, relabel=None):
    """Extracted subtree of the kept nodes (the root is always kept).

    Returns ``(sub, orig, image)`` where ``orig`` maps sub nodes back to the
    base tree and ``image`` maps every base node to its deepest kept
    ancestor-or-self in the sub tree (the root when there is none).
    """
    n = tree.n
    image = np.zeros(n, np.int64)
    sub_parent = [-1]
    sub_label = [0]
    orig = [0]
    for v in range(1, n):
        p = int(tree.parent[v])
        if keep[v]:
            sub_parent.append(int(image[p]))
            lab = int(tree.label[v])
            sub_label.append(relabel(lab) if relabel else lab)
            orig.append(v)
            image[v] = len(orig) - 1
        else:
            image[v] = image[p]
    sub = LabeledTree(sub_parent, sub_label)
    return sub, np.array(orig, np.int64), image


@dataclass(eq=False)
class _Level:
    a: int
    b: int
    cnt0: np.ndarray
    cnt1: np.ndarray
    img0: np.ndarray
    img1: np.ndarray
    depth: np.ndarray
    orig: np.ndarray
    lparent: np.ndarray


class Cursor:
    """A position in one interval tree during a hierarchy descent."""

    __slots__ = ("h", "a", "b", "node")

    def __init__(self, h: "PathHierarchy", v: int):
        if not 0 <= v < h.base.n:
            raise ValueError("unknown node")
        self.h = h
        self.a = 1
        self.b = h.padded
        self.node = v

    def zeros(self) -> int:
        """Inclusive count of 0-labeled nodes on the current root path."""
        lvl = self.h.levels.get((self.a, self.b))
        return int(lvl.cnt0[self.node]) if lvl is not None else 0

    def depth_here(self) -> int:
        lvl = self.h.levels.get((self.a, self.b))
        return int(lvl.depth[self.node]) if lvl is not None else 0

    def descend(self, bit: int) -> None:
        lvl = self.h.levels.get((self.a, self.b))
        m = (self.a + self.b) >> 1
        if lvl is not None:
            self.node = int(lvl.img1[self.node] if bit else lvl.img0[self.node])
        else:
            self.node = 0
        if bit:
            self.a = m + 1
        else:
            self.b = m


class PathHierarchy:
    """Halving hierarchy of extracted 0/1 trees over a labeled tree."""

    def __init__(self, base: LabeledTree, universe: int):
        if universe < 1:
            universe = 1
        self.base = base
        self.universe = int(universe)
        self.height = ceil_log2(self.universe)
        self.padded = 1 << self.height
        self.levels: dict[tuple[int, int], _Level] = {}
        self.descents = 0
        self.levels_descended = 0
        if base.n >= 1 and np.any(base.label[1:] > universe):
            raise ValueError("label outside universe")
        ids = np.arange(base.n, dtype=np.int64)
        lparent = base.parent.astype(np.int64)
        lparent[0] = 0
        labels = base.label.astype(np.int64)
        stack = [(1, self.padded, ids, lparent, labels)]
        while stack:
            a, b, ids, lparent, labels = stack.pop()
            level, left, right = self._make_level(a, b, ids, lparent, labels)
            self.levels[(a, b)] = level
            m = (a + b) >> 1
            if a < b:
                if left is not None:
                    stack.append((a, m, *left))
                if right is not None:
                    stack.append((m + 1, b, *right))

    def _make_level(self, a, b, ids, lparent, labels):
        nloc = ids.size
        m = (a + b) >> 1
        cnt0 = np.zeros(nloc, np.int32)
        cnt1 = np.zeros(nloc, np.int32)
        f0 = np.zeros(nloc, np.int64)
        f1 = np.zeros(nloc, np.int64)
        map0 = np.zeros(nloc, np.int64)
        map1 = np.zeros(nloc, np.int64)
        kept0 = [0]
        kept1 = [0]
        for j in range(1, nloc):
            p = lparent[j]
            if labels[j] <= m:
                cnt0[j] = cnt0[p] + 1
                cnt1[j] = cnt1[p]
                f0[j] = j
                f1[j] = f1[p]
                map0[j] = len(kept0)
                kept0.append(j)
            else:
                cnt0[j] = cnt0[p]
                cnt1[j] = cnt1[p] + 1
                f0[j] = f0[p]
                f1[j] = j
                map1[j] = len(kept1)
                kept1.append(j)
        img0 = map0[f0].astype(np.int32)
        img1 = map1[f1].astype(np.int32)
        level = _Level(
            a=a,
            b=b,
            cnt0=cnt0,
            cnt1=cnt1,
            img0=img0,
            img1=img1,
            depth=cnt0 + cnt1,
            orig=ids.astype(np.int64),
            lparent=lparent.astype(np.int32),
        )
        def child(kept, img):
            if len(kept) <= 1:
                return None
            js = np.array(kept[1:], np.int64)
            return (
                np.concatenate(([ids[0]], ids[js])),
                np.concatenate(([0], img[lparent[js]].astype(np.int64))),
                np.concatenate(([0], labels[js])),
            )

        left = right = None
        if a < b:
            left = child(kept0, img0)
            right = child(kept1, img1)
        return level, left, right

    def cursor(self, v: int) -> Cursor:
        return Cursor(self, v)

    def count_prefix(self, v: int, x: int) -> int:
        """Number of labels <= x on the root-to-v path, v inclusive."""
        cur = Cursor(self, v)
        self.descents += 1
        total = 0
        while cur.a < cur.b:
            m = (cur.a + cur.b) >> 1
            if x <= m:
                cur.descend(0)
            else:
                total += cur.zeros()
                cur.descend(1)
            self.levels_descended += 1
        if x >= cur.a:
            total += cur.depth_here()
        return total

    def count_range(self, v: int, a: int, b: int) -> int:
        if not 1 <= a <= b <= self.universe:
            raise ValueError("invalid label range")
        return self.count_prefix(v, b) - self.count_prefix(v, a - 1)

    def select(self, v: int, i: int) -> int:
        """The i-th smallest label on the root-to-v path (with multiplicity)."""
        if not 0 <= v < self.base.n:
            raise ValueError("unknown node")
        if not 1 <= i <= int(self.base.depth[v]):
            raise ValueError("rank out of range")
        cur = Cursor(self, v)
        self.descents += 1
        while cur.a < cur.b:
            s0 = cur.zeros()
            if i <= s0:
                cur.descend(0)
            else:
                i -= s0
                cur.descend(1)
            self.levels_descended += 1
        return cur.a

    def _descend_to(self, v: int, alpha: int) -> Cursor:
        cur = Cursor(self, v)
        self.descents += 1
        while cur.a < cur.b:
            m = (cur.a + cur.b) >> 1
            cur.descend(0 if alpha <= m else 1)
            self.levels_descended += 1
        return cur

    def nearest(self, v: int, alpha: int) -> int | None:
        """Deepest node on the root-to-v path (v inclusive) labeled alpha."""
        if not 0 <= v < self.base.n:
            raise ValueError("unknown node")
        if not 1 <= alpha <= self.universe:
            return None
        cur = self._descend_to(v, alpha)
        if cur.node == 0:
            return None
        lvl = self.levels.get((cur.a, cur.b))
        return int(lvl.orig[cur.node]) if lvl is not None else None

    def label_rank(self, v: int, alpha: int) -> int:
        if not 1 <= alpha <= self.universe:
            raise ValueError("invalid label range")
        return self.count_range(v, alpha, alpha)

    def label_select(self, v: int, alpha: int, i: int) -> int:
        """The i-th occurrence of alpha counted from the root downward."""
        if not 0 <= v < self.base.n:
            raise ValueError("unknown node")
        cur = self._descend_to(v, alpha)
        lvl = self.levels.get((cur.a, cur.b))
        d = int(lvl.depth[cur.node]) if lvl is not None else 0
        if not 1 <= i <= d:
            raise ValueError("rank out of range")
        node = cur.node
        for _ in range(d - i):
            node = int(lvl.lparent[node])
        return int(lvl.orig[node])


def build_hierarchy(tree: LabeledTree, universe: int | None = None) -> PathHierarchy:
    """Hierarchy over a labeled tree; defaults the universe to the max label."""
    if universe is None:
        universe = int(tree.label.max()) if tree.n > 1 else 1
    return PathHierarchy(tree, universe)


def nearest_labeled_ancestor(h: PathHierarchy, v: int, alpha: int) -> int | None:
    return h.nearest(v, alpha)


def path_count_range(h: PathHierarchy, v: int, a: int, b: int) -> int:
    return h.count_range(v, a, b)


def path_select(h: PathHierarchy, v: int, i: int) -> int:
    return h.select(v, i)


def label_rank(h: PathHierarchy, v: int, alpha: int) -> int:
    return h.label_rank(v, alpha)


def label_select(h: PathHierarchy, v: int, alpha: int, i: int) -> int:
    return h.label_select(v, alpha, i)

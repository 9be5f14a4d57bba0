"""Minimum-weight parent graphs, built with incrementally resolved weights.

The symmetric-difference graph is the MST over all sets plus the two virtual
roots (the empty set and the full universe), with the zero-weight edge between
the roots taken for free.  Instead of computing every pairwise difference up
front, each set-set edge carries a diff iterator; round k advances every live
iterator once, which pins down exactly the weights equal to k-1.  Prim runs
between rounds on the weights known so far, which is safe because every
still-unknown weight is at least as large as any known one.

The insertion graph (largest strict subset per set, or the empty set) reuses
the same iterators: scanning previously inserted sets in rounds, a candidate
is discarded the moment it emits an element of its own, and the first
candidate whose iterator finishes is a largest subset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import get_kernels
from .family import EMPTY_NODE, UNIV_NODE, SetFamily, node_set, set_node
from .lcp import LcpIndex, diff_full_sides

_INF = np.iinfo(np.int64).max


@dataclass(eq=False)
class SymdiffGraph:
    """One parent per set; parent chains end at one of the two roots."""

    u: int
    parent: np.ndarray
    ins: list[np.ndarray]
    dels: list[np.ndarray]
    weights: np.ndarray
    total_weight: int
    max_edge_weight: int
    attach_order: list[int]
    advances: int
    rounds: int
    bag_initial_size: int

    @property
    def s(self) -> int:
        return len(self.parent)


@dataclass(eq=False)
class InsertionGraph:
    """Largest-strict-subset parent per set (EMPTY_NODE when there is none)."""

    u: int
    parent: np.ndarray
    ins: list[np.ndarray]
    total_weight: int
    order: list[int]
    advances: int

    @property
    def s(self) -> int:
        return len(self.parent)


class EdgeBag:
    """Edges whose weights are still unresolved.

    Set-set entries hold live diff iterators, advanced once per round and
    removed exactly when the iterator reports completion, at which point the
    weight is final.  Entries incident to a virtual root have analytically
    known weights (|S|, or u - |S|); they are handed out in the round matching
    their weight and consume no iterator advances.
    """

    def __init__(self, fam: SetFamily, idx: LcpIndex, kernels=None):
        self.idx = idx
        self.kernels = kernels if kernels is not None else idx.kernels
        s = fam.s
        ia, ib = np.triu_indices(s, k=1)
        self._m = int(ia.size)
        self.ea = ia.astype(np.int32)
        self.eb = ib.astype(np.int32)
        starts0 = idx.ct.starts.astype(np.int64) - 1
        self.pa = starts0[self.ea] if self._m else np.zeros(0, np.int64)
        self.pb = starts0[self.eb] if self._m else np.zeros(0, np.int64)
        self.kk = np.zeros(self._m, np.int32)
        self._out_a = np.empty(self._m, np.int32)
        self._out_b = np.empty(self._m, np.int32)
        self._out_w = np.empty(self._m, np.int32)
        self._buckets: dict[int, list[tuple[int, int, int]]] = {}
        for i, seq in enumerate(fam.sets):
            for root, w in ((EMPTY_NODE, len(seq)), (UNIV_NODE, fam.u - len(seq))):
                self._buckets.setdefault(w, []).append((root, set_node(i), w))
        self.initial_size = self._m + 2 * s
        self.advances = 0

    @property
    def live_count(self) -> int:
        return self._m

    def pending_analytic(self) -> bool:
        return bool(self._buckets)

    def advance_round(self) -> list[tuple[int, int, int]]:
        """Advance every live iterator once; returns edges resolved this round."""
        if self._m == 0:
            return []
        self.advances += self._m
        self._m, nout = self.kernels.symdiff_round(
            self.idx.ct.text,
            self.idx.u,
            self.idx.rank,
            self.idx.st,
            self.idx.logt,
            self.ea,
            self.eb,
            self.pa,
            self.pb,
            self.kk,
            self._m,
            self._out_a,
            self._out_b,
            self._out_w,
        )
        return [
            (set_node(int(self._out_a[t])), set_node(int(self._out_b[t])), int(self._out_w[t]))
            for t in range(nout)
        ]

    def release_analytic(self, round_k: int) -> list[tuple[int, int, int]]:
        """Analytic edges whose weight equals ``round_k - 1``."""
        return self._buckets.pop(round_k - 1, [])


class _Prim:
    """Frontier bookkeeping: per-node best candidate edge, O(s) extraction."""

    def __init__(self, s: int):
        nn = s + 2
        self.nn = nn
        self.best_w = np.full(nn, _INF, np.int64)
        self.best_from = np.full(nn, -1, np.int64)
        self.attached = np.zeros(nn, bool)
        self.attach_w = np.zeros(nn, np.int64)
        self.pending: list[list[tuple[int, int]]] = [[] for _ in range(nn)]
        self.parent_node = np.full(nn, -1, np.int64)
        self.order = [EMPTY_NODE, UNIV_NODE]
        self.attached[EMPTY_NODE] = True
        self.attached[UNIV_NODE] = True
        self.n_attached = 2

    def _update(self, v: int, f: int, w: int) -> None:
        bw = self.best_w[v]
        if w < bw:
            self.best_w[v] = w
            self.best_from[v] = f
        elif w == bw:
            bf = int(self.best_from[v])
            if (min(f, v), max(f, v)) < (min(bf, v), max(bf, v)):
                self.best_from[v] = f

    def offer(self, a: int, b: int, w: int) -> None:
        aa = self.attached[a]
        ab = self.attached[b]
        if aa and ab:
            return
        if aa:
            self._update(b, a, w)
        elif ab:
            self._update(a, b, w)
        else:
            self.pending[a].append((b, w))
            self.pending[b].append((a, w))

    def pull_all(self) -> None:
        """Attach nodes while a candidate with a known weight exists."""
        while self.n_attached < self.nn:
            masked = np.where(self.attached, _INF, self.best_w)
            v = int(np.argmin(masked))
            w = int(masked[v])
            if w == _INF:
                return
            ties = np.flatnonzero(masked == w)
            if ties.size > 1:
                v = min(
                    (int(t) for t in ties),
                    key=lambda t: (
                        min(int(self.best_from[t]), t),
                        max(int(self.best_from[t]), t),
                    ),
                )
            self._attach(v, w)

    def _attach(self, v: int, w: int) -> None:
        self.attached[v] = True
        self.parent_node[v] = self.best_from[v]
        self.attach_w[v] = w
        self.order.append(v)
        self.n_attached += 1
        for other, ow in self.pending[v]:
            if not self.attached[other]:
                self._update(other, v, ow)
        self.pending[v] = []


def build_symdiff_graph(fam: SetFamily, idx: LcpIndex, kernels=None) -> SymdiffGraph:
    """Minimum-weight parent assignment over sets plus the two virtual roots."""
    s = fam.s
    bag = EdgeBag(fam, idx, kernels)
    prim = _Prim(s)
    rounds = 0
    guard = fam.u + 3
    while prim.n_attached < s + 2:
        rounds += 1
        if rounds > guard:
            raise RuntimeError("symdiff construction did not converge")
        for a, b, w in bag.advance_round():
            prim.offer(a, b, w)
        for a, b, w in bag.release_analytic(rounds):
            prim.offer(a, b, w)
        prim.pull_all()

    universe = np.arange(1, fam.u + 1, dtype=np.int32)
    parent = np.array([int(prim.parent_node[set_node(i)]) for i in range(s)], np.int64)
    ins: list[np.ndarray] = []
    dels: list[np.ndarray] = []
    weights = np.zeros(s, np.int64)
    for i in range(s):
        p = int(parent[i])
        if p == EMPTY_NODE:
            add, drop = fam.sets[i].copy(), np.zeros(0, np.int32)
        elif p == UNIV_NODE:
            add, drop = np.zeros(0, np.int32), np.setdiff1d(universe, fam.sets[i])
        else:
            elems, sides = diff_full_sides(i, node_set(p), idx)
            arr = np.array(elems, np.int32)
            sd = np.array(sides, np.int32)
            add, drop = arr[sd == 0], arr[sd == 1]
        ins.append(add)
        dels.append(drop)
        weights[i] = len(add) + len(drop)
        if weights[i] != prim.attach_w[set_node(i)]:
            raise AssertionError("materialised diff disagrees with resolved weight")
    return SymdiffGraph(
        u=fam.u,
        parent=parent,
        ins=ins,
        dels=dels,
        weights=weights,
        total_weight=int(weights.sum()),
        max_edge_weight=int(weights.max()) if s else 0,
        attach_order=[int(v) for v in prim.order],
        advances=bag.advances,
        rounds=rounds,
        bag_initial_size=bag.initial_size,
    )


def build_insertion_graph(fam: SetFamily, idx: LcpIndex, kernels=None) -> InsertionGraph:
    """Largest-strict-subset parents, sets processed by increasing size."""
    kern = kernels if kernels is not None else idx.kernels
    s = fam.s
    order = sorted(range(s), key=lambda i: (len(fam.sets[i]), i))
    parent = np.full(s, EMPTY_NODE, np.int64)
    ins: list[np.ndarray] = [np.zeros(0, np.int32)] * s
    starts0 = idx.ct.starts.astype(np.int64) - 1
    advances = 0
    for pos, i in enumerate(order):
        cands = order[:pos]
        win = -1
        w = -1
        if cands:
            win, w, adv = kern.insertion_scan(
                idx.ct.text,
                fam.u,
                idx.rank,
                idx.st,
                idx.logt,
                int(starts0[i]),
                starts0[np.array(cands, np.int64)],
            )
            advances += adv
        if win >= 0:
            p = cands[win]
            parent[i] = set_node(p)
            diff = np.setdiff1d(fam.sets[i], fam.sets[p])
            if diff.size != w:
                raise AssertionError("subset scan weight disagrees with set difference")
            ins[i] = diff
        else:
            ins[i] = fam.sets[i].copy()
    return InsertionGraph(
        u=fam.u,
        parent=parent,
        ins=ins,
        total_weight=int(sum(len(x) for x in ins)),
        order=order,
        advances=advances,
    )


def root_sides(parent: np.ndarray) -> np.ndarray:
    """For each set, True when its parent chain reaches the universe root."""
    s = len(parent)
    memo: dict[int, int] = {EMPTY_NODE: EMPTY_NODE, UNIV_NODE: UNIV_NODE}

    def chase(v: int) -> int:
        trail = []
        while v not in memo:
            trail.append(v)
            v = int(parent[node_set(v)])
            if len(trail) > s + 2:
                raise ValueError("parent chain does not reach a root")
        root = memo[v]
        for t in trail:
            memo[t] = root
        return root

    return np.array([chase(set_node(i)) == UNIV_NODE for i in range(s)], bool)


def split_two_trees(g: SymdiffGraph) -> tuple[list[int], list[int]]:
    """Set indices grouped by the root their parent chain reaches."""
    univ = root_sides(g.parent)
    empty_side = [i for i in range(g.s) if not univ[i]]
    univ_side = [i for i in range(g.s) if univ[i]]
    return empty_side, univ_side

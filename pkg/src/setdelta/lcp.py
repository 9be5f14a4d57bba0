"""Constant-time common-extension queries and the pairwise diff iterator.

The index is a suffix array with an LCP array and a sparse-table RMQ, built
over the concatenated set text.  Construction is O(n log n) via prefix
doubling; every ``lce`` query afterwards is O(1).  On top of it,
:class:`DiffIterator` emits one element of the symmetric difference of two
sets per advance, so the difference size can be bounded after k advances
without ever merging the full sets.
"""

from __future__ import annotations

import numpy as np

from ._kernels import get_kernels
from .family import ConcatText

#: Returned by :func:`diff_advance` when the iterator is finished.
DONE = None


def _suffix_array(text: np.ndarray, keep_history: bool):
    """Prefix-doubling suffix array; optionally keeps per-width rank snapshots."""
    n = text.size
    if n == 0:
        z = np.zeros(0, np.int32)
        return z, z, []
    order = np.argsort(text, kind="stable").astype(np.int64)
    rank = np.empty(n, np.int64)
    vals = text[order]
    rank[order] = np.cumsum(np.r_[0, (vals[1:] != vals[:-1]).astype(np.int64)])
    history = [(1, rank.astype(np.int32))] if keep_history else []
    width = 1
    while rank[order[-1]] != n - 1:
        lo = np.full(n, -1, np.int64)
        lo[: n - width] = rank[width:]
        order = np.lexsort((lo, rank))
        hi_s = rank[order]
        lo_s = lo[order]
        changed = (hi_s[1:] != hi_s[:-1]) | (lo_s[1:] != lo_s[:-1])
        new_rank = np.empty(n, np.int64)
        new_rank[order] = np.cumsum(np.r_[0, changed.astype(np.int64)])
        rank = new_rank
        width *= 2
        if keep_history:
            history.append((width, rank.astype(np.int32)))
    return order.astype(np.int32), rank.astype(np.int32), history


def _sparse_table(lcp: np.ndarray):
    """Min sparse table over the LCP array plus a floor-log2 lookup."""
    n = lcp.size
    if n == 0:
        return np.zeros((1, 1), np.int32), np.zeros(1, np.int32)
    levels = max(1, int(n).bit_length())
    st = np.full((levels, n), np.iinfo(np.int32).max, np.int32)
    st[0] = lcp
    for k in range(1, levels):
        half = 1 << (k - 1)
        m = n - (1 << k) + 1
        if m <= 0:
            break
        st[k, :m] = np.minimum(st[k - 1, :m], st[k - 1, half : half + m])
    logt = np.zeros(n + 1, np.int32)
    if n >= 1:
        logt[1:] = np.floor(np.log2(np.arange(1, n + 1))).astype(np.int32)
    return st, logt


class LcpIndex:
    """Suffix order, LCP values and RMQ over a :class:`ConcatText`."""

    def __init__(self, ct: ConcatText, kernels=None):
        self.ct = ct
        self.u = ct.u
        self.n = ct.n
        self.kernels = kernels if kernels is not None else get_kernels()
        self.lce_calls = 0
        sa, rank, history = _suffix_array(
            ct.text, keep_history=self.kernels.NEEDS_RANK_HISTORY
        )
        self.sa = sa
        self.rank = rank
        self.lcp = self.kernels.lcp_array(ct.text, sa, rank, history)
        self.st, self.logt = _sparse_table(self.lcp)

    def lce(self, i: int, j: int) -> int:
        """Common-prefix length of the suffixes at 1-based positions i and j."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError("position out of range")
        return self._lce0(i - 1, j - 1)

    def _lce0(self, i: int, j: int) -> int:
        self.lce_calls += 1
        if i == j:
            return self.n - i
        ri = int(self.rank[i])
        rj = int(self.rank[j])
        if ri > rj:
            ri, rj = rj, ri
        k = int(self.logt[rj - ri])
        return int(min(self.st[k, ri + 1], self.st[k, rj - (1 << k) + 1]))

    def diff_iterator(self, a: int, b: int) -> "DiffIterator":
        return DiffIterator(self, a, b)


def build_lcp_index(ct: ConcatText, kernels=None) -> LcpIndex:
    """Construct the index over a concatenated set text."""
    return LcpIndex(ct, kernels)


class DiffIterator:
    """Two-cursor enumeration of one symmetric-difference element per advance.

    Cursors ``pa``/``pb`` are 1-based offsets into the two sets' regions of the
    text; ``k`` counts the elements emitted so far.  When both cursors sit on
    terminator values the difference is exhausted and ``k`` is its exact size.
    """

    __slots__ = ("idx", "a", "b", "pa", "pb", "k", "last", "last_side", "done")

    def __init__(self, idx: LcpIndex, a: int, b: int):
        ct = idx.ct
        if not (0 <= a < len(ct.starts) and 0 <= b < len(ct.starts)):
            raise ValueError("set index out of range")
        self.idx = idx
        self.a = a
        self.b = b
        self.pa = 1
        self.pb = 1
        self.k = 0
        self.last: int | None = None
        self.last_side = -1
        self.done = False

    def advance(self) -> int | None:
        if self.done:
            raise ValueError("iterator exhausted")
        if self.a == self.b:
            self.done = True
            return DONE
        idx = self.idx
        text = idx.ct.text
        u = idx.u
        ia = idx.ct.start0(self.a) + self.pa - 1
        ib = idx.ct.start0(self.b) + self.pb - 1
        if text[ia] > u and text[ib] > u:
            self.done = True
            return DONE
        l = idx._lce0(ia, ib)
        xa = int(text[ia + l])
        xb = int(text[ib + l])
        if xa > u and xb > u:
            self.done = True
            return DONE
        if xa < xb:
            self.pa += l + 1
            self.pb += l
            self.last = xa
            self.last_side = 0
        else:
            self.pa += l
            self.pb += l + 1
            self.last = xb
            self.last_side = 1
        self.k += 1
        return self.last


def diff_advance(it: DiffIterator) -> int | None:
    """One step of the iterator: the next diff element, or DONE."""
    return it.advance()


def diff_full(a: int, b: int, idx: LcpIndex) -> list[int]:
    """The whole symmetric difference of sets a and b, in increasing order."""
    out, _ = diff_full_sides(a, b, idx)
    return out


def diff_full_sides(a: int, b: int, idx: LcpIndex) -> tuple[list[int], list[int]]:
    """Like :func:`diff_full` but also reporting the owning side (0=a, 1=b)."""
    it = idx.diff_iterator(a, b)
    elems: list[int] = []
    sides: list[int] = []
    while True:
        x = it.advance()
        if x is DONE:
            return elems, sides
        elems.append(x)
        sides.append(it.last_side)

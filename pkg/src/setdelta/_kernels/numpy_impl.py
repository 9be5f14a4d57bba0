"""Pure-numpy kernels: one vectorised pass over the live edges per round."""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"
NEEDS_RANK_HISTORY = True


def lce_batch(rank, st, logt, i, j):
    """Longest common extensions for position pairs i != j (0-based)."""
    ri = rank[i].astype(np.int64)
    rj = rank[j].astype(np.int64)
    lo = np.minimum(ri, rj)
    hi = np.maximum(ri, rj)
    k = logt[hi - lo]
    left = st[k, lo + 1]
    right = st[k, hi - (np.int64(1) << k) + 1]
    return np.minimum(left, right).astype(np.int64)


def lcp_array(text, sa, rank, history):
    """LCP between rank-adjacent suffixes, from the doubling rank snapshots."""
    n = text.size
    lcp = np.zeros(n, np.int32)
    if n <= 1:
        return lcp
    i = sa[1:].astype(np.int64)
    j = sa[:-1].astype(np.int64)
    l = np.zeros(n - 1, np.int64)
    for width, r in reversed(history):
        a = i + l
        b = j + l
        ok = (a + width <= n) & (b + width <= n)
        ok[ok] = r[a[ok]] == r[b[ok]]
        l[ok] += width
    lcp[1:] = l
    return lcp


def symdiff_round(text, u, rank, st, logt, ea, eb, pa, pb, kk, m, out_a, out_b, out_w):
    """Advance every live edge iterator once; compact in place.

    Returns (new live count, number of edges resolved this round).  Resolved
    edges land in the out_* buffers with their final weights.
    """
    if m == 0:
        return 0, 0
    A = pa[:m].astype(np.int64)
    B = pb[:m].astype(np.int64)
    sa_ = text[A]
    sb_ = text[B]
    at_term = (sa_ > u) & (sb_ > u)
    act = np.flatnonzero(~at_term)
    resolved = at_term.copy()
    newA = A.copy()
    newB = B.copy()
    newK = kk[:m].copy()
    if act.size:
        ia = A[act]
        ib = B[act]
        l = lce_batch(rank, st, logt, ia, ib)
        xa = text[ia + l]
        xb = text[ib + l]
        fin = (xa > u) & (xb > u)
        resolved[act[fin]] = True
        emit = ~fin
        a_side = xa < xb
        newA[act] = np.where(a_side, ia + l + 1, ia + l)
        newB[act] = np.where(a_side, ib + l, ib + l + 1)
        newK[act[emit]] += 1
    ridx = np.flatnonzero(resolved)
    nout = ridx.size
    out_a[:nout] = ea[:m][ridx]
    out_b[:nout] = eb[:m][ridx]
    out_w[:nout] = kk[:m][ridx]
    keep = np.flatnonzero(~resolved)
    new_m = keep.size
    ea[:new_m] = ea[:m][keep]
    eb[:new_m] = eb[:m][keep]
    pa[:new_m] = newA[keep]
    pb[:new_m] = newB[keep]
    kk[:new_m] = newK[keep]
    return int(new_m), int(nout)


def insertion_scan(text, u, rank, st, logt, s_start, cand_starts):
    """Find the best strict-subset candidate for one new set.

    Candidates are scanned in rounds; a candidate is dropped the moment it
    emits one of its own elements (not a subset) or finishes with an empty
    difference (equal set).  Returns (winner index into cand_starts or -1,
    missing-element count, total iterator advances).
    """
    live = np.arange(len(cand_starts), dtype=np.int64)
    pa = np.full(live.size, s_start, np.int64)
    pb = np.asarray(cand_starts, np.int64).copy()
    kk = np.zeros(live.size, np.int64)
    adv = 0
    while live.size:
        adv += int(live.size)
        sa_ = text[pa]
        sb_ = text[pb]
        at_term = (sa_ > u) & (sb_ > u)
        act = np.flatnonzero(~at_term)
        finished = at_term.copy()
        dropped = np.zeros(live.size, bool)
        if act.size:
            ia = pa[act]
            ib = pb[act]
            l = lce_batch(rank, st, logt, ia, ib)
            xa = text[ia + l]
            xb = text[ib + l]
            fin = (xa > u) & (xb > u)
            finished[act[fin]] = True
            emit = ~fin
            a_side = xa < xb
            pa[act] = np.where(a_side, ia + l + 1, ia + l)
            pb[act] = np.where(a_side, ib + l, ib + l + 1)
            kk[act[emit & a_side]] += 1
            dropped[act[emit & ~a_side]] = True
        proper = finished & (kk > 0)
        hit = np.flatnonzero(proper)
        if hit.size:
            t = hit[0]
            return int(live[t]), int(kk[t]), adv
        keep = np.flatnonzero(~(finished | dropped))
        live = live[keep]
        pa = pa[keep]
        pb = pb[keep]
        kk = kk[keep]
    return -1, -1, adv

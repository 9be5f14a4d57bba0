"""Numba kernels: scalar loops over the live edges, jitted and cached."""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND = "numba"
NEEDS_RANK_HISTORY = False


@njit(cache=True, inline="always")
def _lce(text, n, rank, st, logt, i, j):
    if i == j:
        return n - i
    ri = rank[i]
    rj = rank[j]
    if ri > rj:
        ri, rj = rj, ri
    k = logt[rj - ri]
    a = st[k, ri + 1]
    b = st[k, rj - (1 << k) + 1]
    return a if a < b else b


@njit(cache=True)
def _kasai(text, sa, rank):
    n = text.size
    lcp = np.zeros(n, np.int32)
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and text[i + h] == text[j + h]:
                h += 1
            lcp[r] = h
            if h > 0:
                h -= 1
        else:
            h = 0
    return lcp


def lcp_array(text, sa, rank, history):
    return _kasai(text, sa, rank)


@njit(cache=True)
def _symdiff_round(text, n, u, rank, st, logt, ea, eb, pa, pb, kk, m, out_a, out_b, out_w):
    write = 0
    nout = 0
    for t in range(m):
        i = pa[t]
        j = pb[t]
        resolved = False
        if text[i] > u and text[j] > u:
            resolved = True
        else:
            l = _lce(text, n, rank, st, logt, i, j)
            xa = text[i + l]
            xb = text[j + l]
            if xa > u and xb > u:
                resolved = True
            elif xa < xb:
                pa[t] = i + l + 1
                pb[t] = j + l
                kk[t] += 1
            else:
                pa[t] = i + l
                pb[t] = j + l + 1
                kk[t] += 1
        if resolved:
            out_a[nout] = ea[t]
            out_b[nout] = eb[t]
            out_w[nout] = kk[t]
            nout += 1
        else:
            ea[write] = ea[t]
            eb[write] = eb[t]
            pa[write] = pa[t]
            pb[write] = pb[t]
            kk[write] = kk[t]
            write += 1
    return write, nout


def symdiff_round(text, u, rank, st, logt, ea, eb, pa, pb, kk, m, out_a, out_b, out_w):
    new_m, nout = _symdiff_round(
        text, text.size, u, rank, st, logt, ea, eb, pa, pb, kk, m, out_a, out_b, out_w
    )
    return int(new_m), int(nout)


@njit(cache=True)
def _insertion_scan(text, n, u, rank, st, logt, s_start, cand_starts):
    nc = cand_starts.size
    live = np.arange(nc)
    pa = np.full(nc, s_start, np.int64)
    pb = cand_starts.astype(np.int64)
    kk = np.zeros(nc, np.int64)
    m = nc
    adv = 0
    while m > 0:
        adv += m
        write = 0
        winner = -1
        wk = -1
        for t in range(m):
            i = pa[t]
            j = pb[t]
            finished = False
            dropped = False
            if text[i] > u and text[j] > u:
                finished = True
            else:
                l = _lce(text, n, rank, st, logt, i, j)
                xa = text[i + l]
                xb = text[j + l]
                if xa > u and xb > u:
                    finished = True
                elif xa < xb:
                    pa[t] = i + l + 1
                    pb[t] = j + l
                    kk[t] += 1
                else:
                    # candidate-side element: not a subset of the new set
                    pa[t] = i + l
                    pb[t] = j + l + 1
                    dropped = True
            if finished:
                if kk[t] > 0 and winner < 0:
                    winner = live[t]
                    wk = kk[t]
            elif not dropped:
                live[write] = live[t]
                pa[write] = pa[t]
                pb[write] = pb[t]
                kk[write] = kk[t]
                write += 1
        if winner >= 0:
            return winner, wk, adv
        m = write
    return -1, -1, adv


def insertion_scan(text, u, rank, st, logt, s_start, cand_starts):
    winner, w, adv = _insertion_scan(
        text, text.size, u, rank, st, logt, s_start, np.asarray(cand_starts, np.int64)
    )
    return int(winner), int(w), int(adv)

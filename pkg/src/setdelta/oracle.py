"""Brute-force reference answers: queries, Kruskal MST, subset parents.

Everything here is deliberately slow and simple (linear scans, full pairwise
weights, union-find Kruskal) so it can serve as an independent check on the
incremental builders and the compressed stores.
"""

from __future__ import annotations

import numpy as np

from .family import EMPTY_NODE, UNIV_NODE, SetFamily, node_set, set_node


def naive_symdiff(a, b) -> list[int]:
    """Sorted elements occurring in exactly one of the two sorted sequences."""
    return sorted(set(map(int, a)) ^ set(map(int, b)))


def oracle_query(fam: SetFamily, i: int, kind: str, arg: int):
    """Answer one query on set i by scanning its sorted sequence.

    Kinds: member -> bool, access -> int, rank -> int, pred/succ -> int|None.
    """
    seq = [int(x) for x in fam.sets[i]]
    if kind == "access":
        if not 1 <= arg <= len(seq):
            raise ValueError("rank out of range")
        return seq[arg - 1]
    if not 1 <= arg <= fam.u:
        raise ValueError("element out of range")
    if kind == "member":
        return arg in seq
    if kind == "rank":
        return sum(1 for x in seq if x <= arg)
    if kind == "pred":
        below = [x for x in seq if x <= arg]
        return below[-1] if below else None
    if kind == "succ":
        above = [x for x in seq if x >= arg]
        return above[0] if above else None
    raise ValueError(f"unknown query kind: {kind}")


class _UnionFind:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.p[rb] = ra
        return True


def _all_edges(fam: SetFamily) -> list[tuple[int, int, int]]:
    """Every edge of the full graph over sets plus the two virtual roots."""
    edges = [(0, EMPTY_NODE, UNIV_NODE)]
    for i, seq in enumerate(fam.sets):
        edges.append((len(seq), EMPTY_NODE, set_node(i)))
        edges.append((fam.u - len(seq), UNIV_NODE, set_node(i)))
    for i in range(fam.s):
        for j in range(i + 1, fam.s):
            w = len(naive_symdiff(fam.sets[i], fam.sets[j]))
            edges.append((w, set_node(i), set_node(j)))
    return edges


def oracle_mst_weight(fam: SetFamily) -> tuple[int, list[int]]:
    """Kruskal over the full graph; returns (total weight, parent node per set).

    The zero-weight edge between the two virtual roots is always taken, so the
    total equals the weight of the best pair of trees rooted at them.  Ties
    are broken by (weight, min endpoint, max endpoint) with EMPTY < UNIV < sets.
    """
    nn = fam.s + 2
    uf = _UnionFind(nn)
    adj: list[list[int]] = [[] for _ in range(nn)]
    total = 0
    for w, a, b in sorted(_all_edges(fam)):
        if uf.union(a, b):
            total += w
            adj[a].append(b)
            adj[b].append(a)
    parents = [-1] * nn
    stack = [EMPTY_NODE]
    seen = {EMPTY_NODE}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                parents[w] = v
                stack.append(w)
    return total, [parents[set_node(i)] for i in range(fam.s)]


def oracle_insertion_parent(fam: SetFamily, i: int) -> int:
    """Node id of a largest strict subset of set i (smallest index on ties)."""
    target = set(map(int, fam.sets[i]))
    best = EMPTY_NODE
    best_size = -1
    for j, other in enumerate(fam.sets):
        if j == i or len(other) >= len(target):
            continue
        cand = set(map(int, other))
        if cand < target and len(cand) > best_size:
            best = set_node(j)
            best_size = len(cand)
    return best


def oracle_insertion_total(fam: SetFamily) -> int:
    """Insertion compressibility computed from the brute-force parents."""
    total = 0
    for i in range(fam.s):
        p = oracle_insertion_parent(fam, i)
        psize = 0 if p == EMPTY_NODE else len(fam.sets[node_set(p)])
        total += len(fam.sets[i]) - psize
    return total

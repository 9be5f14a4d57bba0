"""Cross-checks of the whole pipeline against the brute-force oracle.

``check_family`` builds every artifact for one family (index, both graphs,
both stores) and compares all query answers, structural identities, iterator
behaviour and advance accounting against independent references.  The CLI
``verify`` command and the acceptance suite both drive it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .family import (
    EMPTY_NODE,
    UNIV_NODE,
    SetFamily,
    build_concat_text,
    family_from_ints,
    node_set,
)
from .generators import GENERATORS
from .graphs import build_insertion_graph, build_symdiff_graph, split_two_trees
from .lcp import LcpIndex
from .pathtree import ceil_log2
from .store import SetStore, build_indel_store, build_insertion_store, deserialize


@dataclass
class CheckResult:
    s: int
    u: int
    n: int
    kruskal_total: int = 0
    prim_total: int = 0
    insertion_total: int = 0
    advances: int = 0
    advance_bound: int = 0
    bag_initial: int = 0
    failures: list[str] = field(default_factory=list)
    query_count: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def _pair_diffs(fam: SetFamily) -> dict[tuple[int, int], list[int]]:
    out = {}
    for i in range(fam.s):
        for j in range(i + 1, fam.s):
            out[(i, j)] = oracle.naive_symdiff(fam.sets[i], fam.sets[j])
    return out


def _check_iterator(fam, idx, diffs, res: CheckResult) -> None:
    for (i, j), want in diffs.items():
        it = idx.diff_iterator(i, j)
        got = []
        calls = 0
        while True:
            before = idx.lce_calls
            x = it.advance()
            calls += 1
            if idx.lce_calls - before > 2:
                res.failures.append(f"iterator: ({i},{j}): >2 lce calls in one advance")
            if x is None:
                break
            got.append(x)
        if got != want:
            res.failures.append(f"iterator: ({i},{j}): {got} != {want}")
        if calls != len(want) + 1 or it.k != len(want):
            res.failures.append(f"iterator: ({i},{j}): finished after {calls} advances")
        try:
            it.advance()
            res.failures.append(f"iterator: ({i},{j}): advance after done")
        except ValueError:
            pass


def _check_store(fam: SetFamily, store: SetStore, res: CheckResult, inject_fault=False):
    tag = store.kind.name.lower()
    want_levels = ceil_log2(max(fam.u, 1))
    faulted = not inject_fault
    for i in range(fam.s):
        if store.cardinality(i) != len(fam.sets[i]):
            res.failures.append(f"query: {tag} set {i}: cardinality")
        if store.reconstruct(i) != [int(x) for x in fam.sets[i]]:
            res.failures.append(f"query: {tag} set {i}: reconstruct")
        if store.rank(i, 0) != 0:
            res.failures.append(f"query: {tag} set {i}: rank(0)")
        for x in range(1, fam.u + 1):
            got_m = store.member(i, x)
            if not faulted:
                got_m = not got_m
                faulted = True
            if got_m != oracle.oracle_query(fam, i, "member", x):
                res.failures.append(f"query: {tag} set {i}: member({x})")
            if store.rank(i, x) != oracle.oracle_query(fam, i, "rank", x):
                res.failures.append(f"query: {tag} set {i}: rank({x})")
            pred, succ = store.pred_succ(i, x)
            if pred != oracle.oracle_query(fam, i, "pred", x):
                res.failures.append(f"query: {tag} set {i}: pred({x})")
            if succ != oracle.oracle_query(fam, i, "succ", x):
                res.failures.append(f"query: {tag} set {i}: succ({x})")
            res.query_count += 4
        for r in range(1, len(fam.sets[i]) + 1):
            if store.access(i, r) != oracle.oracle_query(fam, i, "access", r):
                res.failures.append(f"query: {tag} set {i}: access({r})")
            if store.last_access_levels != want_levels:
                res.failures.append(f"query: {tag} set {i}: access({r}) level count")
            res.query_count += 1
        for bad in (0, len(fam.sets[i]) + 1):
            try:
                store.access(i, bad)
                res.failures.append(f"query: {tag} set {i}: access({bad}) did not fail")
            except ValueError:
                pass


def _alternation_ok(store: SetStore) -> bool:
    """Signed labels of each element must alternate along every root path."""
    if store.kind.name != "SYMDIFF":
        return True
    for tree, start_present in ((store.tree_empty, False), (store.tree_univ, True)):
        last: list[dict[int, bool]] = [dict() for _ in range(tree.n)]
        for v in range(1, tree.n):
            p = int(tree.parent[v])
            state = dict(last[p])
            lab = int(tree.label[v])
            x, is_del = (lab - store.u, True) if lab > store.u else (lab, False)
            present = state.get(x, start_present)
            if present == (not is_del):
                return False
            state[x] = not is_del
            last[v] = state
        del last
    return True


def check_family(
    fam: SetFamily,
    kernels=None,
    with_queries: bool = True,
    with_iterator: bool = True,
    with_serialize: bool = False,
    inject_fault: bool = False,
) -> CheckResult:
    res = CheckResult(s=fam.s, u=fam.u, n=fam.n)
    idx = LcpIndex(build_concat_text(fam), kernels)
    diffs = _pair_diffs(fam)

    sym = build_symdiff_graph(fam, idx)
    res.prim_total = sym.total_weight
    res.advances = sym.advances
    res.bag_initial = sym.bag_initial_size
    ell = sym.max_edge_weight
    res.advance_bound = sum(min(ell + 1, len(d) + 1) for d in diffs.values())
    res.kruskal_total, _ = oracle.oracle_mst_weight(fam)
    if res.prim_total != res.kruskal_total:
        res.failures.append(f"mst: {res.prim_total} != {res.kruskal_total}")
    if res.advances > res.advance_bound:
        res.failures.append(f"advances: {res.advances} > bound {res.advance_bound}")
    if res.bag_initial != (fam.s + 2) * (fam.s + 1) // 2 - 1:
        res.failures.append("advances: bag initial size")

    ig = build_insertion_graph(fam, idx)
    res.insertion_total = ig.total_weight
    if ig.total_weight != oracle.oracle_insertion_total(fam):
        res.failures.append("insertion: total weight")
    for i in range(fam.s):
        want = oracle.oracle_insertion_parent(fam, i)
        got = int(ig.parent[i])
        ws = 0 if want == EMPTY_NODE else len(fam.sets[node_set(want)])
        gs = 0 if got == EMPTY_NODE else len(fam.sets[node_set(got)])
        if ws != gs:
            res.failures.append(f"insertion: parent size for set {i}")
        if got != EMPTY_NODE and not set(
            map(int, fam.sets[node_set(got)])
        ) < set(map(int, fam.sets[i])):
            res.failures.append(f"insertion: parent of set {i} is not a strict subset")
    if not (res.prim_total <= res.insertion_total <= fam.n):
        res.failures.append("ordering: delta <= insertion <= n violated")

    # replay every parent chain back into concrete sets
    sym_order = [node_set(v) for v in sym.attach_order[2:]]
    for g, with_dels, set_order in ((sym, True, sym_order), (ig, False, ig.order)):
        built: dict[int, set[int]] = {}
        for i in set_order:
            p = int(g.parent[i])
            if p == EMPTY_NODE:
                base: set[int] = set()
            elif p == UNIV_NODE:
                base = set(range(1, fam.u + 1))
            else:
                base = built[node_set(p)]
            cur = base | {int(x) for x in g.ins[i]}
            if with_dels:
                cur -= {int(x) for x in g.dels[i]}
            built[i] = cur
            if cur != set(map(int, fam.sets[i])):
                res.failures.append(f"structure: replay of set {i}")

    empty_side, univ_side = split_two_trees(sym)
    if sorted(empty_side + univ_side) != list(range(fam.s)):
        res.failures.append("structure: tree split is not a partition")

    sym_store = build_indel_store(sym, fam)
    ins_store = build_insertion_store(ig, fam)
    if sym_store.node_counts()["nodes"] != res.prim_total + 2:
        res.failures.append("structure: indel node count")
    if ins_store.node_counts()["nodes"] != res.insertion_total + 1:
        res.failures.append("structure: insertion node count")
    if not _alternation_ok(sym_store):
        res.failures.append("structure: signed label alternation")

    if with_iterator:
        _check_iterator(fam, idx, diffs, res)
    if with_queries:
        _check_store(fam, sym_store, res, inject_fault=inject_fault)
        _check_store(fam, ins_store, res)
    if with_serialize:
        for st in (sym_store, ins_store):
            again = deserialize(st.serialize())
            for i in range(fam.s):
                if again.reconstruct(i) != st.reconstruct(i):
                    res.failures.append("serialize: round-trip reconstruct")
                for x in range(1, fam.u + 1):
                    if again.member(i, x) != st.member(i, x) or again.rank(
                        i, x
                    ) != st.rank(i, x) or again.pred_succ(i, x) != st.pred_succ(i, x):
                        res.failures.append("serialize: round-trip query drift")
                        break
    return res


def trial_family(seed: int, smax: int, umax: int) -> tuple[str, SetFamily]:
    """Deterministic family for one verification trial."""
    names = sorted(GENERATORS)
    name = names[seed % len(names)]
    rng = np.random.default_rng(seed)
    s = int(rng.integers(1, smax + 1))
    raw = GENERATORS[name](rng, s, umax)
    return name, family_from_ints(raw)


@dataclass
class VerifySummary:
    trials: int
    queries: int
    elapsed: float
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_verification(
    seed: int = 0,
    trials: int = 100,
    smax: int = 30,
    umax: int = 64,
    inject_fault: bool = False,
    kernels=None,
) -> VerifySummary:
    t0 = time.perf_counter()
    failures: list[str] = []
    queries = 0
    for t in range(trials):
        name, fam = trial_family(seed + t, smax, umax)
        res = check_family(
            fam,
            kernels=kernels,
            with_serialize=(t % 5 == 0),
            inject_fault=inject_fault and t == 0,
        )
        queries += res.query_count
        for f in res.failures:
            lines = " / ".join(
                " ".join(fam.token_of(int(x)) for x in s) for s in fam.sets
            )
            failures.append(f"trial {t} seed {seed + t} gen {name}: {f} [family {lines}]")
        if len(failures) > 20:
            break
    return VerifySummary(
        trials=trials,
        queries=queries,
        elapsed=time.perf_counter() - t0,
        failures=failures,
    )

"""Command line front end: build, query, stats, verify, bench.

Exit codes: 0 ok, 1 usage error, 2 data error, 3 verification failure.
Set ids on the command line are 1-based input line numbers; query arguments
are given in the original token space.
"""

from __future__ import annotations

import argparse
import bisect
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ._kernels import ENV_FLAG, get_kernels, numba_available
from .family import build_concat_text, family_from_ints, parse_and_map
from .generators import GENERATORS
from .graphs import build_insertion_graph, build_symdiff_graph
from .lcp import LcpIndex
from .oracle import naive_symdiff
from .store import StoreKind, build_indel_store, build_insertion_store, deserialize
from .verify import run_verification

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="setdelta", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a store from a set-family text file")
    b.add_argument("--input", required=True)
    b.add_argument("--mode", choices=["symdiff", "insertion"], default="symdiff")
    b.add_argument("--output", required=True)
    b.add_argument("--backend", choices=["numba", "numpy"], default=None)

    q = sub.add_parser("query", help="run one query against a stored family")
    q.add_argument("--store", required=True)
    q.add_argument("--set", dest="set_id", type=int, required=True)
    q.add_argument("--op", choices=["member", "access", "rank", "pred", "succ"], required=True)
    q.add_argument("--arg", required=True)

    st = sub.add_parser("stats", help="print size and shape figures of a store")
    st.add_argument("--store", required=True)

    v = sub.add_parser("verify", help="randomised equivalence suite vs the oracle")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--smax", type=int, default=30)
    v.add_argument("--umax", type=int, default=64)
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    bench = sub.add_parser("bench", help="timing table for builds and queries")
    bench.add_argument("--gen", choices=sorted(GENERATORS), default="clustered")
    bench.add_argument("--s", type=int, default=200)
    bench.add_argument("--u", type=int, default=4096)
    bench.add_argument("--mode", choices=["symdiff", "insertion"], default="symdiff")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--queries", type=int, default=2000)
    bench.add_argument("--threads", type=int, default=1)
    bench.add_argument("--compare-kernels", action="store_true")
    return p


def _build_store(fam, mode, kernels=None):
    idx = LcpIndex(build_concat_text(fam), kernels)
    if mode == "symdiff":
        g = build_symdiff_graph(fam, idx)
        return build_indel_store(g, fam), g
    g = build_insertion_graph(fam, idx)
    return build_insertion_store(g, fam), g


def _cmd_build(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            fam = parse_and_map(fh.read())
    except OSError as e:
        print(f"error: cannot read {args.input}: {e}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    kernels = get_kernels(args.backend)
    t0 = time.perf_counter()
    store, g = _build_store(fam, args.mode, kernels)
    dt = time.perf_counter() - t0
    try:
        with open(args.output, "wb") as fh:
            fh.write(store.serialize())
    except OSError as e:
        print(f"error: cannot write {args.output}: {e}", file=sys.stderr)
        return EXIT_DATA
    figures = (
        f"delta={g.total_weight} ell={g.max_edge_weight}"
        if args.mode == "symdiff"
        else f"I={g.total_weight}"
    )
    print(f"s={fam.s} n={fam.n} u={fam.u} {figures} build_s={dt:.3f}")
    return EXIT_OK


def _load_store(path):
    with open(path, "rb") as fh:
        return deserialize(fh.read())


def _nearest_below(store, token):
    """Largest universe element whose token orders <= the queried token."""
    if store.numeric:
        try:
            val = int(token)
        except ValueError:
            raise ValueError(f"token {token!r} is not numeric like this family")
        keys = [int(t) for t in store.tokens]
        return bisect.bisect_right(keys, val)
    return bisect.bisect_right(store.tokens, token)


def _cmd_query(args) -> int:
    try:
        store = _load_store(args.store)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    i = args.set_id - 1
    if not 0 <= i < store.s:
        print(f"error: unknown set id {args.set_id}", file=sys.stderr)
        return EXIT_DATA
    try:
        if args.op == "access":
            r = int(args.arg)
            print(store.token_of(store.access(i, r)))
            return EXIT_OK
        x = store.id_of(args.arg)
        if args.op == "member":
            print("true" if x is not None and store.member(i, x) else "false")
            return EXIT_OK
        if x is None:
            # outside the universe: resolve against the nearest universe value
            below = _nearest_below(store, args.arg)
            if args.op == "rank":
                print(store.rank(i, below))
                return EXIT_OK
            r = store.rank(i, below)
            if args.op == "pred":
                print("none" if r == 0 else store.token_of(store.access(i, r)))
            else:
                more = r < store.cardinality(i)
                print(store.token_of(store.access(i, r + 1)) if more else "none")
            return EXIT_OK
        if args.op == "rank":
            print(store.rank(i, x))
        else:
            pred, succ = store.pred_succ(i, x)
            val = pred if args.op == "pred" else succ
            print("none" if val is None else store.token_of(val))
        return EXIT_OK
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA


def _cmd_stats(args) -> int:
    try:
        store = _load_store(args.store)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    counts = store.node_counts()
    figure = "delta" if store.kind is StoreKind.SYMDIFF else "I"
    expect = store.total_weight() + (2 if store.kind is StoreKind.SYMDIFF else 1)
    parts = [
        f"kind={store.kind.name.lower()}",
        f"s={store.s}",
        f"n={store.total_elements()}",
        f"u={store.u}",
        f"{figure}={store.total_weight()}",
    ]
    parts += [f"{k}={v}" for k, v in counts.items()]
    if store.kind is StoreKind.SYMDIFF:
        parts.append(f"empty_tree_depth={int(store.tree_empty.depth.max())}")
        parts.append(f"univ_tree_depth={int(store.tree_univ.depth.max())}")
    else:
        parts.append(f"tree_depth={int(store.tree.depth.max())}")
    cards = [int(store.card[i]) for i in range(store.s)]
    parts.append(f"max_set={max(cards, default=0)}")
    parts.append(f"identity={'ok' if counts['nodes'] == expect else 'VIOLATED'}")
    print(" ".join(parts))
    return EXIT_OK if counts["nodes"] == expect else EXIT_DATA


def _cmd_verify(args) -> int:
    if args.trials < 0 or args.smax < 1 or args.umax < 1:
        print("error: parameters must be positive", file=sys.stderr)
        return EXIT_USAGE
    summary = run_verification(
        seed=args.seed,
        trials=args.trials,
        smax=args.smax,
        umax=args.umax,
        inject_fault=args.inject_fault,
    )
    print(
        f"trials={summary.trials} queries={summary.queries} "
        f"elapsed_s={summary.elapsed:.2f}"
    )
    if summary.ok:
        print("PASS")
        return EXIT_OK
    for f in summary.failures[:10]:
        print(f"FAIL {f}")
    return EXIT_VERIFY


def _naive_baseline(fam):
    return [list(map(int, s)) for s in fam.sets]


def _time_queries(store, fam, rng, count, threads=1):
    """Median per-query latency (microseconds) per operation kind."""
    sets = rng.integers(0, fam.s, size=count)
    elems = rng.integers(1, fam.u + 1, size=count)
    ranks = [int(rng.integers(1, len(fam.sets[i]) + 1)) for i in sets]
    plain = _naive_baseline(fam)

    def run_store():
        for t in range(count):
            i = int(sets[t])
            x = int(elems[t])
            store.member(i, x)
            store.rank(i, x)
            store.access(i, ranks[t])
            store.pred_succ(i, x)

    def run_naive():
        for t in range(count):
            i = int(sets[t])
            x = int(elems[t])
            seq = plain[i]
            p = bisect.bisect_right(seq, x)
            _ = p > 0 and seq[p - 1] == x
            _ = seq[ranks[t] - 1]
            _ = seq[p - 1] if p else None
            _ = seq[p] if p < len(seq) else None

    out = {}
    for name, fn in (("store", run_store), ("naive", run_naive)):
        if threads > 1 and name == "store":
            t0 = time.perf_counter()
            with ThreadPoolExecutor(max_workers=threads) as ex:
                list(ex.map(lambda _: fn(), range(threads)))
            dt = time.perf_counter() - t0
            out[name] = dt / (count * threads) * 1e6
        else:
            t0 = time.perf_counter()
            fn()
            out[name] = (time.perf_counter() - t0) / count * 1e6
    return out


def _bench_once(fam, args, backend):
    kernels = get_kernels(backend)
    t0 = time.perf_counter()
    idx = LcpIndex(build_concat_text(fam), kernels)
    if args.mode == "symdiff":
        g = build_symdiff_graph(fam, idx)
        store = build_indel_store(g, fam)
        ell = g.max_edge_weight
        cap = fam.s * (fam.s - 1) // 2 * (ell + 1)
        if fam.s <= 400:
            cap = sum(
                min(ell + 1, len(naive_symdiff(fam.sets[i], fam.sets[j])) + 1)
                for i in range(fam.s)
                for j in range(i + 1, fam.s)
            )
        extra = f"delta={g.total_weight} ell={ell} advances={g.advances} advance_bound={cap}"
    else:
        g = build_insertion_graph(fam, idx)
        store = build_insertion_store(g, fam)
        extra = f"I={g.total_weight} advances={g.advances}"
    dt = time.perf_counter() - t0
    print(
        f"backend={kernels.BACKEND} gen={args.gen} mode={args.mode} "
        f"s={fam.s} u={fam.u} n={fam.n} build_s={dt:.3f} {extra} "
        f"nodes={store.node_counts()['nodes']} "
        f"ratio={g.total_weight / max(1, fam.n):.3f}"
    )
    rng = np.random.default_rng(args.seed + 1)
    lat = _time_queries(store, fam, rng, args.queries, threads=args.threads)
    print(
        f"backend={kernels.BACKEND} threads={args.threads} queries={args.queries} "
        f"query_us_store={lat['store']:.2f} query_us_naive={lat['naive']:.2f}"
    )
    return dt


def _cmd_bench(args) -> int:
    if args.s <= 0 or args.u <= 0:
        print("nothing to do: empty generator parameters")
        return EXIT_OK
    rng = np.random.default_rng(args.seed)
    fam = family_from_ints(GENERATORS[args.gen](rng, args.s, args.u))
    if fam.n == 0:
        print("nothing to do: generated family is empty")
        return EXIT_OK
    backends = [None]
    if args.compare_kernels:
        backends = ["numpy"] + (["numba"] if numba_available() else [])
    times = [_bench_once(fam, args, b) for b in backends]
    if len(times) == 2 and times[1] > 0:
        print(f"speedup_numba={times[0] / times[1]:.2f}x")
    if args.compare_kernels and not numba_available():
        print(f"numba unavailable; only the numpy path ran (set {ENV_FLAG}=0 makes no difference)")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    handlers = {
        "build": _cmd_build,
        "query": _cmd_query,
        "stats": _cmd_stats,
        "verify": _cmd_verify,
        "bench": _cmd_bench,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

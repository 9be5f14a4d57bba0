"""The query-ready compressed representation of a set family.

An insertion store is one labeled tree rooted at the empty set: each set hangs
off its parent by a chain of nodes labeled with the missing elements.  A
symdiff store is two such trees, rooted at the empty set and at the full
universe, whose chain nodes carry signed labels: element x to insert, or x to
delete (encoded as u + x so one tree type serves both).  Every set is anchored
at the node whose root path evaluates to it; all five queries run in
O(log u) by descending the path hierarchies.

Serialized layout (little endian), shared by both kinds::

    magic   b"SDST"
    u16     format version (currently 1)
    u8      kind: 0 = insertion, 1 = symdiff
    u8      flags: bit 0 set when tokens order numerically
    u64     u   (universe size)
    u64     s   (number of sets)
    u x     token: varint byte length, then UTF-8 bytes (element id order)
    s x     record: varint parent (0 empty root, 1 universe root, j+2 set j),
            varint entry count, then per entry a varint (gap << 1 | del-flag)
            where gaps delta-encode the strictly increasing element values.

Hierarchies and anchors are derived data and are rebuilt on load.
"""

from __future__ import annotations

import enum

import numpy as np

from .family import EMPTY_NODE, UNIV_NODE, SetFamily, node_set, set_node
from .graphs import InsertionGraph, SymdiffGraph, root_sides
from .pathtree import LabeledTree, PathHierarchy, TreeBuilder, ceil_log2, extract

_MAGIC = b"SDST"
_VERSION = 1


class StoreKind(enum.Enum):
    INSERTION = 0
    SYMDIFF = 1


class _Side:
    """One signed tree with its per-sign extractions and hierarchies."""

    def __init__(self, base: LabeledTree, u: int):
        self.base = base
        pos_keep = (base.label >= 1) & (base.label <= u)
        neg_keep = base.label > u
        self.pos_tree, self.pos_orig, self.pos_image = extract(base, pos_keep)
        self.neg_tree, self.neg_orig, self.neg_image = extract(
            base, neg_keep, relabel=lambda x: x - u
        )
        self.hpos = PathHierarchy(self.pos_tree, u)
        self.hneg = PathHierarchy(self.neg_tree, u)

    def depth_of_pos(self, local: int) -> int:
        return int(self.base.depth[self.pos_orig[local]])

    def depth_of_neg(self, local: int) -> int:
        return int(self.base.depth[self.neg_orig[local]])


class SetStore:
    """Compressed set family supporting member/access/rank/pred/succ."""

    def __init__(self, kind, u, tokens, numeric, parent, ins, dels):
        self.kind = StoreKind(kind)
        self.u = int(u)
        self.tokens = list(tokens)
        self.numeric = bool(numeric)
        self.parent = np.asarray(parent, np.int64)
        self.ins = [np.asarray(x, np.int32) for x in ins]
        self.dels = [np.asarray(x, np.int32) for x in dels]
        if len(self.tokens) != self.u:
            raise ValueError("corrupt store data: token table size")
        if len(self.ins) != self.s or len(self.dels) != self.s:
            raise ValueError("corrupt store data: record count")
        if self.kind is StoreKind.INSERTION:
            if any(p == UNIV_NODE for p in self.parent) or any(
                d.size for d in self.dels
            ):
                raise ValueError("corrupt store data: deletions in insertion store")
        self._ids = {t: e + 1 for e, t in enumerate(self.tokens)}
        self._build()

    @property
    def s(self) -> int:
        return len(self.parent)

    # -- construction -------------------------------------------------------

    def _topo(self) -> list[int]:
        children: dict[int, list[int]] = {}
        for i, p in enumerate(self.parent):
            p = int(p)
            if p not in (EMPTY_NODE, UNIV_NODE):
                j = node_set(p)
                if not 0 <= j < self.s:
                    raise ValueError("corrupt store data: parent id")
            children.setdefault(p, []).append(i)
        order: list[int] = []
        stack = children.get(EMPTY_NODE, []) + children.get(UNIV_NODE, [])
        stack.reverse()
        while stack:
            i = stack.pop()
            order.append(i)
            stack.extend(reversed(children.get(set_node(i), [])))
        if len(order) != self.s:
            raise ValueError("corrupt store data: parent cycle")
        return order

    def _build(self) -> None:
        topo = self._topo()
        u = self.u
        card = np.zeros(self.s, np.int64)
        for i in topo:
            p = int(self.parent[i])
            if p == EMPTY_NODE:
                base = 0
            elif p == UNIV_NODE:
                base = u
            else:
                base = int(card[node_set(p)])
            card[i] = base + len(self.ins[i]) - len(self.dels[i])
            if card[i] < 0 or card[i] > u:
                raise ValueError("corrupt store data: implausible cardinality")
        self.card = card
        self.univ_rooted = root_sides(self.parent)
        self.anchor = np.zeros(self.s, np.int64)
        self.last_access_levels = -1

        if self.kind is StoreKind.INSERTION:
            tb = TreeBuilder()
            for i in topo:
                p = int(self.parent[i])
                at = 0 if p == EMPTY_NODE else int(self.anchor[node_set(p)])
                self.anchor[i] = tb.chain(at, np.sort(self.ins[i]))
            self.tree = tb.build()
            self.hier = PathHierarchy(self.tree, u)
            return

        builders = (TreeBuilder(), TreeBuilder())  # (empty side, universe side)
        for i in topo:
            p = int(self.parent[i])
            tb = builders[1 if self.univ_rooted[i] else 0]
            at = 0 if p in (EMPTY_NODE, UNIV_NODE) else int(self.anchor[node_set(p)])
            labels = sorted(
                [(int(x), 0) for x in self.ins[i]] + [(int(x), 1) for x in self.dels[i]]
            )
            self.anchor[i] = tb.chain(at, [x if neg == 0 else u + x for x, neg in labels])
        self.tree_empty = builders[0].build()
        self.tree_univ = builders[1].build()
        self.sides = (_Side(self.tree_empty, u), _Side(self.tree_univ, u))
        self.anchor_pos = np.zeros(self.s, np.int64)
        self.anchor_neg = np.zeros(self.s, np.int64)
        for i in range(self.s):
            side = self.sides[1 if self.univ_rooted[i] else 0]
            self.anchor_pos[i] = side.pos_image[self.anchor[i]]
            self.anchor_neg[i] = side.neg_image[self.anchor[i]]

    # -- queries ------------------------------------------------------------

    def _check_set(self, i: int) -> None:
        if not 0 <= i < self.s:
            raise ValueError("unknown set")

    def _check_element(self, x: int) -> None:
        if not 1 <= x <= self.u:
            raise ValueError("element out of range")

    def _side(self, i: int) -> _Side:
        return self.sides[1 if self.univ_rooted[i] else 0]

    def member(self, i: int, x: int) -> bool:
        self._check_set(i)
        self._check_element(x)
        if self.kind is StoreKind.INSERTION:
            return self.hier.nearest(int(self.anchor[i]), x) is not None
        side = self._side(i)
        up = side.hpos.nearest(int(self.anchor_pos[i]), x)
        un = side.hneg.nearest(int(self.anchor_neg[i]), x)
        if up is not None and un is not None:
            return side.depth_of_pos(up) > side.depth_of_neg(un)
        if up is not None:
            return True
        if un is not None:
            return False
        return bool(self.univ_rooted[i])

    def rank(self, i: int, x: int) -> int:
        self._check_set(i)
        if x == 0:
            return 0
        self._check_element(x)
        if self.kind is StoreKind.INSERTION:
            return self.hier.count_prefix(int(self.anchor[i]), x)
        side = self._side(i)
        r = side.hpos.count_prefix(int(self.anchor_pos[i]), x)
        r -= side.hneg.count_prefix(int(self.anchor_neg[i]), x)
        if self.univ_rooted[i]:
            r += x
        return r

    def access(self, i: int, r: int) -> int:
        self._check_set(i)
        if not 1 <= r <= int(self.card[i]):
            raise ValueError("rank out of range")
        if self.kind is StoreKind.INSERTION:
            before = self.hier.levels_descended
            out = self.hier.select(int(self.anchor[i]), r)
            self.last_access_levels = self.hier.levels_descended - before
            return out
        side = self._side(i)
        cp = side.hpos.cursor(int(self.anchor_pos[i]))
        cm = side.hneg.cursor(int(self.anchor_neg[i]))
        from_univ = bool(self.univ_rooted[i])
        levels = 0
        while cp.a < cp.b:
            m = (cp.a + cp.b) >> 1
            left = cp.zeros() - cm.zeros()
            if from_univ:
                # universe elements tacitly present in the left half interval
                left += min(m, self.u) - cp.a + 1
            if r <= left:
                cp.descend(0)
                cm.descend(0)
            else:
                r -= left
                cp.descend(1)
                cm.descend(1)
            levels += 1
        self.last_access_levels = levels
        return cp.a

    def pred_succ(self, i: int, x: int) -> tuple[int | None, int | None]:
        self._check_set(i)
        self._check_element(x)
        r = self.rank(i, x)
        pred = None if r == 0 else self.access(i, r)
        if pred == x:
            succ: int | None = pred
        elif r == int(self.card[i]):
            succ = None
        else:
            succ = self.access(i, r + 1)
        return pred, succ

    def cardinality(self, i: int) -> int:
        self._check_set(i)
        return int(self.card[i])

    def reconstruct(self, i: int) -> list[int]:
        self._check_set(i)
        return [self.access(i, r) for r in range(1, int(self.card[i]) + 1)]

    # -- token translation --------------------------------------------------

    def id_of(self, token: str) -> int | None:
        return self._ids.get(token)

    def token_of(self, element: int) -> str:
        self._check_element(element)
        return self.tokens[element - 1]

    # -- reporting ----------------------------------------------------------

    def total_weight(self) -> int:
        return int(sum(len(x) for x in self.ins) + sum(len(x) for x in self.dels))

    def total_elements(self) -> int:
        return int(self.card.sum())

    def node_counts(self) -> dict[str, int]:
        if self.kind is StoreKind.INSERTION:
            return {"nodes": self.tree.n}
        return {
            "nodes": self.tree_empty.n + self.tree_univ.n,
            "empty_tree_nodes": self.tree_empty.n,
            "univ_tree_nodes": self.tree_univ.n,
        }

    def expected_access_levels(self) -> int:
        return ceil_log2(max(self.u, 1))

    def serialize(self) -> bytes:
        return serialize(self)


def build_insertion_store(g: InsertionGraph, fam: SetFamily) -> SetStore:
    return SetStore(
        StoreKind.INSERTION,
        fam.u,
        fam.tokens,
        fam.numeric,
        g.parent,
        g.ins,
        [np.zeros(0, np.int32)] * g.s,
    )


def build_indel_store(g: SymdiffGraph, fam: SetFamily) -> SetStore:
    return SetStore(
        StoreKind.SYMDIFF, fam.u, fam.tokens, fam.numeric, g.parent, g.ins, g.dels
    )


# -- wire format ------------------------------------------------------------


def _put_varint(buf: bytearray, x: int) -> None:
    while True:
        b = x & 0x7F
        x >>= 7
        if x:
            buf.append(b | 0x80)
        else:
            buf.append(b)
            return


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.data):
            raise ValueError("truncated store data")
        out = self.data[self.pos : self.pos + k]
        self.pos += k
        return out

    def u8(self) -> int:
        return self.take(1)[0]

    def u16(self) -> int:
        return int.from_bytes(self.take(2), "little")

    def u64(self) -> int:
        return int.from_bytes(self.take(8), "little")

    def varint(self) -> int:
        x = 0
        shift = 0
        while True:
            b = self.u8()
            x |= (b & 0x7F) << shift
            if not b & 0x80:
                return x
            shift += 7
            if shift > 63:
                raise ValueError("corrupt store data: varint overflow")


def serialize(store: SetStore) -> bytes:
    buf = bytearray()
    buf += _MAGIC
    buf += _VERSION.to_bytes(2, "little")
    buf.append(store.kind.value)
    buf.append(1 if store.numeric else 0)
    buf += store.u.to_bytes(8, "little")
    buf += store.s.to_bytes(8, "little")
    for t in store.tokens:
        raw = t.encode("utf-8")
        _put_varint(buf, len(raw))
        buf += raw
    for i in range(store.s):
        _put_varint(buf, int(store.parent[i]))
        entries = sorted(
            [(int(x), 0) for x in store.ins[i]] + [(int(x), 1) for x in store.dels[i]]
        )
        _put_varint(buf, len(entries))
        prev = 0
        for x, neg in entries:
            _put_varint(buf, ((x - prev) << 1) | neg)
            prev = x
    return bytes(buf)


def deserialize(data: bytes) -> SetStore:
    rd = _Reader(data)
    if rd.take(4) != _MAGIC:
        raise ValueError("unsupported format")
    if rd.u16() != _VERSION:
        raise ValueError("unsupported format")
    kind = rd.u8()
    if kind not in (0, 1):
        raise ValueError("unsupported format")
    flags = rd.u8()
    u = rd.u64()
    s = rd.u64()
    tokens = [rd.take(rd.varint()).decode("utf-8") for _ in range(u)]
    parent = np.zeros(s, np.int64)
    ins: list[np.ndarray] = []
    dels: list[np.ndarray] = []
    for i in range(s):
        parent[i] = rd.varint()
        m = rd.varint()
        add: list[int] = []
        drop: list[int] = []
        x = 0
        for _ in range(m):
            code = rd.varint()
            gap = code >> 1
            if gap < 1:
                raise ValueError("corrupt store data: non-increasing diff list")
            x += gap
            if x > u:
                raise ValueError("corrupt store data: element above universe")
            (drop if code & 1 else add).append(x)
        ins.append(np.array(add, np.int32))
        dels.append(np.array(drop, np.int32))
    if rd.pos != len(data):
        raise ValueError("corrupt store data: trailing bytes")
    return SetStore(kind, u, tokens, bool(flags & 1), parent, ins, dels)

"""Set-family model: dense element mapping and the concatenated set text.

A family is a sequence of finite sets drawn from a totally ordered token
universe.  Tokens are mapped to dense element ids ``1..u`` (numeric order when
every token is a non-negative integer, lexicographic otherwise), and the family
can be flattened into a single integer text where each set is followed by a
unique terminator value ``> u``.  Element ids are 1-based throughout; set
indices in the library API are 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

# Virtual graph nodes used by the builders and the oracle.  The natural int
# order (EMPTY < UNIV < sets) doubles as the tie-breaking order.
EMPTY_NODE = 0
UNIV_NODE = 1


def set_node(i: int) -> int:
    """Graph node id of the i-th stored set (0-based)."""
    return i + 2


def node_set(v: int) -> int:
    """Inverse of :func:`set_node`; negative for the virtual roots."""
    return v - 2


_INT_TOKEN = re.compile(r"[0-9]+\Z")


@dataclass(eq=False)
class SetFamily:
    """A family of strictly increasing element sequences over ``[1..u]``."""

    sets: list[np.ndarray]
    u: int
    n: int
    tokens: list[str]
    numeric: bool

    @property
    def s(self) -> int:
        return len(self.sets)

    def id_of(self, token: str) -> int | None:
        """Dense id of an original token, or None if outside the universe."""
        try:
            return self._ids[token]
        except AttributeError:
            self._ids = {t: e + 1 for e, t in enumerate(self.tokens)}
            return self._ids.get(token)
        except KeyError:
            return None

    def token_of(self, element: int) -> str:
        if not 1 <= element <= self.u:
            raise ValueError("element out of range")
        return self.tokens[element - 1]

    def validate(self) -> None:
        """Check the structural invariants; raises ValueError on breach."""
        if len(self.tokens) != self.u:
            raise ValueError("token table does not match universe size")
        seen: set[int] = set()
        total = 0
        for seq in self.sets:
            if len(seq) == 0:
                raise ValueError("empty set not allowed")
            if np.any(seq[1:] <= seq[:-1]):
                raise ValueError("set is not strictly increasing")
            if seq[0] < 1 or seq[-1] > self.u:
                raise ValueError("element id outside [1..u]")
            seen.update(int(x) for x in seq)
            total += len(seq)
        if self.sets and (len(seen) != self.u or total != self.n):
            raise ValueError("family counts are inconsistent")
        if not self.sets and (self.u != 0 or self.n != 0):
            raise ValueError("family counts are inconsistent")


def family_from_tokens(token_sets: list[list[str]]) -> SetFamily:
    """Build a family from per-set token lists (duplicates within a set ok)."""
    for toks in token_sets:
        if not toks:
            raise ValueError("empty set not allowed in input")
    distinct = {t for toks in token_sets for t in toks}
    numeric = bool(distinct) and all(_INT_TOKEN.match(t) for t in distinct)
    if numeric:
        ordered = sorted(distinct, key=lambda t: (int(t), t))
    else:
        ordered = sorted(distinct)
    ids = {t: e + 1 for e, t in enumerate(ordered)}
    sets = [
        np.array(sorted({ids[t] for t in toks}), dtype=np.int32)
        for toks in token_sets
    ]
    fam = SetFamily(
        sets=sets,
        u=len(ordered),
        n=sum(len(s) for s in sets),
        tokens=ordered,
        numeric=numeric,
    )
    fam.validate()
    return fam


def family_from_ints(int_sets) -> SetFamily:
    """Convenience wrapper: integer tokens, one list per set."""
    return family_from_tokens([[str(x) for x in s] for s in int_sets])


def parse_and_map(text: str) -> SetFamily:
    """Parse the text input format: one set per line, '#' lines ignored."""
    token_sets: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        toks = raw.split()
        if not toks:
            raise ValueError(f"line {lineno}: empty set not allowed in input")
        token_sets.append(toks)
    if not token_sets:
        raise ValueError("empty family")
    return family_from_tokens(token_sets)


def unmap_element(fam: SetFamily, element: int) -> str:
    """Inverse of the ingestion mapping."""
    return fam.token_of(element)


@dataclass(eq=False)
class ConcatText:
    """All sets concatenated, set i followed by terminator ``u + i + 1``.

    ``starts`` holds the 1-based offset of each set in ``text``; text positions
    are 1-based in the public API while ``text`` itself is a plain 0-based
    numpy array of the values.
    """

    text: np.ndarray
    starts: np.ndarray
    lens: np.ndarray
    u: int

    @property
    def n(self) -> int:
        return int(self.text.size)

    def start0(self, i: int) -> int:
        """0-based offset of set i's region."""
        return int(self.starts[i]) - 1


def build_concat_text(fam: SetFamily) -> ConcatText:
    parts = []
    starts = np.empty(fam.s, dtype=np.int32)
    lens = np.empty(fam.s, dtype=np.int32)
    pos = 1
    for i, seq in enumerate(fam.sets):
        starts[i] = pos
        lens[i] = len(seq)
        parts.append(seq)
        parts.append(np.array([fam.u + i + 1], dtype=np.int32))
        pos += len(seq) + 1
    text = np.concatenate(parts).astype(np.int32) if parts else np.zeros(0, np.int32)
    return ConcatText(text=text, starts=starts, lens=lens, u=fam.u)

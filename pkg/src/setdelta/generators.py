"""Seeded family generators for verification and benchmarking.

All generators return raw integer sets; feed them to
:func:`setdelta.family.family_from_ints` to obtain the dense mapping.
"""

from __future__ import annotations

import numpy as np


def _pick(rng: np.random.Generator, u_max: int, size: int) -> list[int]:
    size = max(1, min(size, u_max))
    return sorted(int(x) + 1 for x in rng.choice(u_max, size=size, replace=False))


def uniform_family(rng: np.random.Generator, s: int, u_max: int) -> list[list[int]]:
    hi = max(1, min(u_max, 24))
    return [_pick(rng, u_max, int(rng.integers(1, hi + 1))) for _ in range(s)]


def nested_family(rng: np.random.Generator, s: int, u_max: int) -> list[list[int]]:
    """Chains of supersets; good insertion structure, tiny diffs."""
    sets: list[list[int]] = []
    current: set[int] = set()
    for _ in range(s):
        if not current or rng.random() < 0.2 or len(current) >= u_max:
            current = set(_pick(rng, u_max, int(rng.integers(1, 4))))
        else:
            room = [x for x in range(1, u_max + 1) if x not in current]
            grow = int(rng.integers(1, min(4, len(room)) + 1)) if room else 0
            current = current | {
                int(room[j]) for j in rng.choice(len(room), size=grow, replace=False)
            }
        sets.append(sorted(current))
    return sets


def clustered_family(
    rng: np.random.Generator,
    s: int,
    u_max: int,
    clusters: int | None = None,
    size: int | None = None,
    flips: int | None = None,
) -> list[list[int]]:
    """Perturbations of a few centroids; small pairwise diffs within a cluster."""
    if clusters is None:
        clusters = max(2, min(8, s))
    if size is None:
        size = max(2, min(u_max // 2, 40))
    if flips is None:
        flips = max(1, size // 8)
    size = max(1, min(size, u_max))
    # disjoint centroid regions (cycling once the universe is exhausted)
    perm = rng.permutation(u_max) + 1
    centroids = [
        {int(perm[(c * size + t) % u_max]) for t in range(size)}
        for c in range(clusters)
    ]
    sets = []
    for t in range(s):
        base = set(centroids[t % clusters])
        drop = min(int(rng.integers(0, flips + 1)), len(base) - 1)
        if drop:
            victims = rng.choice(sorted(base), size=drop, replace=False)
            base -= {int(v) for v in victims}
        room = u_max - len(base)
        grow = min(int(rng.integers(0, flips + 1)), room)
        while grow > 0:
            x = int(rng.integers(1, u_max + 1))
            if x not in base:
                base.add(x)
                grow -= 1
        sets.append(sorted(base))
    return sets


def duplicated_family(rng: np.random.Generator, s: int, u_max: int) -> list[list[int]]:
    base = uniform_family(rng, max(1, (s + 1) // 2), u_max)
    out = list(base)
    while len(out) < s:
        out.append(list(base[int(rng.integers(0, len(base)))]))
    perm = rng.permutation(len(out))
    return [out[int(p)] for p in perm]


GENERATORS = {
    "random": uniform_family,
    "nested": nested_family,
    "clustered": clustered_family,
    "duplicates": duplicated_family,
}

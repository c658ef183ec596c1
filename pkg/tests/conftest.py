"""Shared helpers: exhaustive permutation streams and seeded random patterns."""
from __future__ import annotations

import random
from itertools import permutations

from permpat import Box, Permutation, barred, classical, decorated, marked, mesh


def all_perms(n):
    """All of S_n in lexicographic order."""
    for vals in permutations(range(1, n + 1)):
        yield Permutation(vals)


def perms_through(n):
    """All permutations of every length from 1 to n."""
    for k in range(1, n + 1):
        yield from all_perms(k)


def random_values(rng: random.Random, k: int) -> tuple[int, ...]:
    vals = list(range(1, k + 1))
    rng.shuffle(vals)
    return tuple(vals)


def random_boxes(rng: random.Random, k: int, count: int) -> tuple[Box, ...]:
    cells = [Box(c, r) for c in range(k + 1) for r in range(k + 1)]
    return tuple(sorted(rng.sample(cells, min(count, len(cells)))))


def random_pattern(rng: random.Random, kinds=("classical", "mesh", "marked"),
                   max_len: int = 4):
    """One random well-formed pattern of a random kind from `kinds`."""
    kind = rng.choice(kinds)
    k = rng.randint(1, max_len)
    perm = random_values(rng, k)
    if kind == "classical":
        return classical(perm)
    if kind == "mesh":
        return mesh(perm, random_boxes(rng, k, rng.randint(0, 3)))
    if kind == "marked":
        shade = set(random_boxes(rng, k, rng.randint(0, 2)))
        marks = []
        for _ in range(rng.randint(1, 2)):
            region = [b for b in random_boxes(rng, k, rng.randint(1, 3))
                      if b not in shade]
            if region:
                marks.append((tuple(region), rng.randint(1, 2)))
        if not marks:
            return mesh(perm, tuple(sorted(shade)))
        return marked(perm, shade=tuple(sorted(shade)), marks=marks)
    if kind == "barred":
        return barred(perm, [rng.randint(1, k)])
    if kind == "decorated":
        decs = [(random_boxes(rng, k, rng.randint(1, 2)),
                 classical(random_values(rng, rng.randint(1, 2))))
                for _ in range(rng.randint(1, 2))]
        return decorated(perm, decs)
    raise AssertionError(kind)

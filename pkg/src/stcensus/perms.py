"""Permutations of {0..N-1} in word form.

A permutation is a tuple ``p`` of length N with ``p[i]`` the image of ``i``.
All functions are pure; permutations are hashable and safely shareable.
"""
from __future__ import annotations

import random
from typing import Iterable, Sequence


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def is_perm(word: Sequence[int]) -> bool:
    n = len(word)
    seen = [False] * n
    for x in word:
        if not isinstance(x, int) or x < 0 or x >= n or seen[x]:
            return False
        seen[x] = True
    return True


def check_perm(word: Sequence[int]) -> tuple[int, ...]:
    """Validate and freeze a permutation, raising ValueError if not bijective."""
    if not is_perm(word):
        raise ValueError(f"not a permutation of 0..{len(word) - 1}: {word!r}")
    return tuple(word)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """p after q: (p*q)[i] = p[q[i]]."""
    return tuple(p[x] for x in q)


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def power(p: Sequence[int], k: int) -> tuple[int, ...]:
    """p**k for any integer k, via cycle stepping (O(N))."""
    n = len(p)
    out = [0] * n
    for cyc in cycles(p, trivial=True):
        m = len(cyc)
        s = k % m
        for j, x in enumerate(cyc):
            out[x] = cyc[(j + s) % m]
    return tuple(out)


def commutator(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """a b a^-1 b^-1 (composition left of right)."""
    ainv = inverse(a)
    binv = inverse(b)
    return tuple(a[b[ainv[binv[i]]]] for i in range(len(a)))


def cycles(p: Sequence[int], trivial: bool = False) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its minimum, ordered by minimum.

    Fixed points are omitted unless ``trivial`` is true.
    """
    n = len(p)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        if trivial or len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    """Cycle lengths including fixed points, sorted non-increasing."""
    return tuple(sorted((len(c) for c in cycles(p, trivial=True)), reverse=True))


def from_cycles(n: int, cycs: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """Permutation of 0..n-1 given by disjoint cycles; entries must be distinct."""
    p = list(range(n))
    used = set()
    for cyc in cycs:
        for x in cyc:
            if not 0 <= x < n:
                raise ValueError(f"cycle entry {x} out of range 0..{n - 1}")
            if x in used:
                raise ValueError(f"cycles are not disjoint at {x}")
            used.add(x)
        for j, x in enumerate(cyc):
            p[x] = cyc[(j + 1) % len(cyc)]
    return tuple(p)


def cycle_string(p: Sequence[int]) -> str:
    """Disjoint-cycle notation; fixed points omitted; identity is '()'."""
    cycs = cycles(p)
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycs)


def class_representative(n: int, ctype: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of the conjugacy class with the given cycle type."""
    if sum(ctype) != n:
        raise ValueError("cycle type must sum to n")
    p = list(range(n))
    start = 0
    for length in ctype:
        for j in range(length):
            p[start + j] = start + (j + 1) % length
        start += length
    return tuple(p)


def conjugate(p: Sequence[int], s: Sequence[int]) -> tuple[int, ...]:
    """s p s^-1."""
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[s[i]] = s[x]
    return tuple(out)


def random_perm(n: int, rng: random.Random) -> tuple[int, ...]:
    word = list(range(n))
    rng.shuffle(word)
    return tuple(word)

"""Symmetric-group characters by the Murnaghan-Nakayama rule.

Everything here is exact integer arithmetic.  The counting engine needs, for
each partition lambda of N, the product of hooks N!/dim(lambda) and the
character value on one conjugacy class, so both are memoized globally; when
the remaining class parts are all 1 the recursion short-circuits through the
hook length formula.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .strata import partitions_of


@lru_cache(maxsize=None)
def hook_product(lam: tuple[int, ...]) -> int:
    """Product of all hook lengths of the Young diagram of lam."""
    if not lam:
        return 1
    conj = conjugate(lam)
    out = 1
    for i, row in enumerate(lam):
        for j in range(row):
            out *= row - j + conj[j] - i - 1
    return out


@lru_cache(maxsize=None)
def dim_irrep(lam: tuple[int, ...]) -> int:
    """Dimension of the irreducible S_n representation: n!/hook product."""
    n = sum(lam)
    num = math.factorial(n)
    hooks = hook_product(lam)
    assert num % hooks == 0
    return num // hooks


def conjugate(lam: tuple[int, ...]) -> tuple[int, ...]:
    if not lam:
        return ()
    out = []
    for j in range(lam[0]):
        out.append(sum(1 for row in lam if row > j))
    return tuple(out)


def class_size(n: int, ctype: tuple[int, ...]) -> int:
    """Size of the S_n conjugacy class with the given cycle type."""
    if sum(ctype) != n:
        raise ValueError("cycle type must sum to n")
    den = 1
    run = 0
    prev = None
    for part in sorted(ctype):
        den *= part
        if part == prev:
            run += 1
            den *= run
        else:
            prev = part
            run = 1
    return math.factorial(n) // den


def _border_strips(lam: tuple[int, ...], size: int):
    """Yield (new_lambda, height) for each removable border strip of the size.

    Beta-number encoding: with beta_i = lam_i + (k-1-i) pairwise distinct,
    removing a border strip of the given size means replacing some beta by
    beta - size, allowed iff the result is nonnegative and fresh; the strip
    height is the number of betas strictly in between.
    """
    k = len(lam)
    betas = [lam[i] + (k - 1 - i) for i in range(k)]
    bset = set(betas)
    for i, b in enumerate(betas):
        nb = b - size
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for c in betas if nb < c < b)
        newbetas = sorted((nb if j == i else betas[j] for j in range(k)), reverse=True)
        new = tuple(newbetas[j] - (k - 1 - j) for j in range(k))
        yield tuple(x for x in new if x > 0), height


_char_cache: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}


def character(lam: tuple[int, ...], ctype: tuple[int, ...]) -> int:
    """chi_lambda on the class of cycle type ctype (Murnaghan-Nakayama)."""
    if sum(lam) != sum(ctype):
        raise ValueError("partition and class must have equal size")
    lam = tuple(sorted(lam, reverse=True))
    ctype = tuple(sorted(ctype, reverse=True))
    return _mn(lam, ctype)


def _mn(lam: tuple[int, ...], ctype: tuple[int, ...]) -> int:
    if not lam:
        return 1
    if all(c == 1 for c in ctype):
        return dim_irrep(lam)
    key = (lam, ctype)
    cached = _char_cache.get(key)
    if cached is not None:
        return cached
    # peel the largest class part
    part, rest = ctype[0], ctype[1:]
    total = 0
    for sub, height in _border_strips(lam, part):
        val = _mn(sub, rest)
        total += -val if height % 2 else val
    _char_cache[key] = total
    return total


def character_table_column(n: int, ctype: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """chi_lambda(ctype) for every lambda of n."""
    return {lam: character(lam, ctype) for lam in partitions_of(n)}

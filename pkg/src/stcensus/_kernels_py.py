"""Pure-Python fallback for the two hot kernels.

Mirrors the compiled extension exactly; selected by ``stcensus.kernels`` when
the extension is unavailable or STCENSUS_PURE_PYTHON is set.
"""
from __future__ import annotations

from itertools import permutations

BACKEND = "python"


def pair_type_census(n: int, v_first: int | None = None):
    """Commutator census over (class representative h, all v in S_n).

    For every conjugacy class of S_n (indexed as in partitions_of(n)) and
    every v (optionally restricted to v[0] == v_first), classifies the pair
    by the cycle type of h v h^-1 v^-1 and by transitivity of <h, v>.

    Returns {(h_type, comm_type): [count_all, count_transitive]} with counts
    for the single representative h (not scaled by class size).
    """
    from .perms import class_representative, inverse
    from .strata import partitions_of

    types = partitions_of(n)
    out: dict[tuple, list[int]] = {}
    rng = range(n)
    for htype in types:
        h = class_representative(n, htype)
        hinv = inverse(h)
        buckets: dict[tuple, list[int]] = {}
        for v in permutations(rng):
            if v_first is not None and v[0] != v_first:
                continue
            vinv = [0] * n
            for i in rng:
                vinv[v[i]] = i
            comm = tuple(h[v[hinv[vinv[i]]]] for i in rng)
            ctype = _cycle_type(comm, n)
            rec = buckets.get(ctype)
            if rec is None:
                rec = buckets[ctype] = [0, 0]
            rec[0] += 1
            if _transitive(h, v, n):
                rec[1] += 1
        for ctype, rec in buckets.items():
            out[(htype, ctype)] = rec
    return out


def _cycle_type(p, n: int) -> tuple[int, ...]:
    seen = [False] * n
    lens = []
    for i in range(n):
        if seen[i]:
            continue
        m = 1
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            m += 1
            j = p[j]
        lens.append(m)
    lens.sort(reverse=True)
    return tuple(lens)


def _transitive(h, v, n: int) -> bool:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comps = n
    for i in range(n):
        for j in (h[i], v[i]):
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
                comps -= 1
    return comps == 1


def direction_spectra(h, v, dirs):
    """Cylinder data of an origami in many rational directions.

    For each primitive direction (p, q) in ``dirs`` returns the list of
    (width, height) of the maximal cylinders in that direction, computed as
    horizontal cylinders of the image under an SL(2,Z) word taking (p, q)
    to (1, 0).
    """
    n = len(h)
    out = []
    for p, q in dirs:
        hh, vv = list(h), list(v)
        a, b = p, q
        while b != 0:
            k = a // b
            a -= k * b
            if k:
                hk = _power(hh, k, n)
                vv = [vv[x] for x in hk]  # T^-k: v <- v h^k
            a, b = -b, a  # S: direction (a,b) -> (-b,a), pair -> (v^-1, h)
            hh, vv = _inverse(vv, n), hh
        if a == -1:  # S^2 brings (-1,0) to (1,0)
            hh = _inverse(hh, n)
            vv = _inverse(vv, n)
        out.append(_horizontal_cylinders(hh, vv, n))
    return out


def _inverse(p, n: int):
    out = [0] * n
    for i in range(n):
        out[p[i]] = i
    return out


def _power(p, k: int, n: int):
    seen = [False] * n
    out = [0] * n
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
        m = len(cyc)
        s = k % m
        for idx, x in enumerate(cyc):
            out[x] = cyc[(idx + s) % m]
    return out


def _horizontal_cylinders(h, v, n: int):
    # rows = cycles of h; rows merge upward across seams with no cone point
    row_of = [-1] * n
    rows = []
    for i in range(n):
        if row_of[i] >= 0:
            continue
        rid = len(rows)
        cyc = [i]
        row_of[i] = rid
        j = h[i]
        while j != i:
            row_of[j] = rid
            cyc.append(j)
            j = h[j]
        rows.append(cyc)
    parent = list(range(len(rows)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for rid, row in enumerate(rows):
        if all(v[h[i]] == h[v[i]] for i in row):
            a, b = find(rid), find(row_of[v[row[0]]])
            if a != b:
                parent[a] = b
    heights: dict[int, int] = {}
    widths: dict[int, int] = {}
    for rid, row in enumerate(rows):
        root = find(rid)
        heights[root] = heights.get(root, 0) + 1
        widths[root] = len(row)
    return sorted((widths[r], heights[r]) for r in heights)

"""Shell-by-shell enumeration of the origamis of a stratum.

Every origami is a stack of horizontal cylinders glued along their
boundaries, and the gluing is a piecewise-translation bijection from the top
boundary circles to the bottom boundary circles whose discontinuities are
exactly the Sum(m_i + 1) corners at the cone points.  Enumerating cylinder
shapes, breakpoint positions, and arc placements therefore reaches every
isomorphism class with N squares in time polynomial in N (for a fixed
stratum), far beyond the reach of the S_N x S_N scan.  Candidates failing
the commutator/connectivity checks are discarded and duplicates are removed
via the canonical pair, so the output is exact.

The search cost still grows quickly with the breakpoint count b = Sum(m_i+1)
(roughly b! placements per shape): strata with b <= 6 enumerate comfortably
to N of 20 and beyond, wider ones only near their minimal area; past the
work budget a BudgetExceededError is raised rather than hanging.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .errors import BudgetExceededError
from .origami import Origami
from .perms import cycle_type
from .strata import Stratum

# DFS-node allowance: the gluing search grows with the breakpoint count
# sum(m_i + 1), so wide strata at large N trip this instead of hanging
WORK_BUDGET_DEFAULT = 30_000_000


class _WorkMeter:
    __slots__ = ("left", "n")

    def __init__(self, budget: int, n: int):
        self.left = budget
        self.n = n

    def spend(self, amount: int = 1) -> None:
        self.left -= amount
        if self.left < 0:
            raise BudgetExceededError(
                "origami enumeration work budget exhausted", reached=self.n
            )


@lru_cache(maxsize=32)
def origamis_in_stratum(st: Stratum, n: int) -> tuple[Origami, ...]:
    """All connected origamis with n squares in the stratum, one per class.

    Returned origamis are in canonical labeling, sorted; the 1/|Aut|-weighted
    count of the result equals the census weighted count (tested).  Raises
    BudgetExceededError when the gluing search would be infeasible.
    """
    if n < st.min_squares or not st.m:
        return ()
    target = tuple(
        sorted([mi + 1 for mi in st.m] + [1] * (n - st.min_squares), reverse=True)
    )
    nbreaks = sum(mi + 1 for mi in st.m)
    meter = _WorkMeter(WORK_BUDGET_DEFAULT, n)
    found: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    for cyls in _cylinder_multisets(n, nbreaks):
        for o in _glue_cylinders(cyls, nbreaks, target, meter):
            found.add(o.canonical_pair())
    return tuple(Origami(h, v) for h, v in sorted(found))


def _cylinder_multisets(n: int, kmax: int):
    """Multisets of (width, height) with total area n, at most kmax entries,
    listed as tuples sorted non-increasing."""
    pairs = sorted(
        ((w, h) for w in range(1, n + 1) for h in range(1, n // w + 1)),
        reverse=True,
    )

    def rec(remaining: int, start: int, prefix: list):
        if remaining == 0:
            yield tuple(prefix)
            return
        if len(prefix) == kmax:
            return
        for idx in range(start, len(pairs)):
            w, h = pairs[idx]
            if w * h <= remaining:
                prefix.append((w, h))
                yield from rec(remaining - w * h, idx, prefix)
                prefix.pop()

    yield from rec(n, 0, [])


def _glue_cylinders(cyls, nbreaks: int, target, meter: _WorkMeter):
    """All origamis with the given cylinders and breakpoint count.

    Square layout: cylinder c occupies offsets[c] .. offsets[c]+w*h-1, row by
    row from the bottom; h cycles rows, v stacks them, and the top rows map
    to the bottom rows through the arc gluing.  Each cylinder may be rotated
    freely, so the first breakpoint of every top circle is pinned at
    position 0.
    """
    k = len(cyls)
    if k > nbreaks:
        return
    n = sum(w * h for w, h in cyls)
    offsets = []
    acc = 0
    for w, h in cyls:
        offsets.append(acc)
        acc += w * h

    hperm = list(range(n))
    vperm = [-1] * n
    for c, (w, ht) in enumerate(cyls):
        base = offsets[c]
        for r in range(ht):
            for x in range(w):
                hperm[base + r * w + x] = base + r * w + (x + 1) % w
            if r + 1 < ht:
                for x in range(w):
                    vperm[base + r * w + x] = base + (r + 1) * w + x
    hperm = tuple(hperm)

    def top_square(c: int, x: int) -> int:
        w, ht = cyls[c]
        return offsets[c] + (ht - 1) * w + x

    def bottom_square(c: int, x: int) -> int:
        return offsets[c] + x

    # distribute breakpoints: b_c >= 1 per top circle, first one pinned at 0
    for bcounts in _compositions(nbreaks, k):
        if any(b > cyls[c][0] for c, b in enumerate(bcounts)):
            continue
        pos_choices = []
        for c, b in enumerate(bcounts):
            w = cyls[c][0]
            pos_choices.append(
                [(0,) + rest for rest in combinations(range(1, w), b - 1)]
            )
        for positions in _product(pos_choices):
            arcs = []  # (circle, start, length)
            for c, pts in enumerate(positions):
                w = cyls[c][0]
                for i, p in enumerate(pts):
                    nxt = pts[(i + 1) % len(pts)]
                    length = (nxt - p) % w or w
                    arcs.append((c, p, length))
            yield from _place_arcs(
                arcs, cyls, hperm, list(vperm), top_square, bottom_square, target, meter
            )


def _place_arcs(arcs, cyls, hperm, vbase, top_square, bottom_square, target, meter):
    """DFS placement of domain arcs onto the bottom circles, then validation."""
    k = len(cyls)
    free = [[True] * w for w, _ in cyls]
    placement: list[tuple[int, int] | None] = [None] * len(arcs)

    def rec(t: int):
        if t == len(arcs):
            meter.spend(len(vbase))
            yield from _finish(
                arcs, placement, cyls, hperm, vbase, top_square, bottom_square, target
            )
            return
        _, _, length = arcs[t]
        for c in range(k):
            w = cyls[c][0]
            if length > w:
                continue
            for s in range(w):
                meter.spend()
                if all(free[c][(s + u) % w] for u in range(length)):
                    for u in range(length):
                        free[c][(s + u) % w] = False
                    placement[t] = (c, s)
                    yield from rec(t + 1)
                    for u in range(length):
                        free[c][(s + u) % w] = True
                    placement[t] = None

    yield from rec(0)


def _finish(arcs, placement, cyls, hperm, vbase, top_square, bottom_square, target):
    v = list(vbase)
    for (ci, p, length), (cj, s) in zip(arcs, placement):
        wi = cyls[ci][0]
        wj = cyls[cj][0]
        for u in range(length):
            v[top_square(ci, (p + u) % wi)] = bottom_square(cj, (s + u) % wj)
    o = Origami(hperm, tuple(v))
    if cycle_type(o.commutator) != target:
        return
    if not o.is_connected:
        return
    yield o


def _compositions(total: int, parts: int):
    """Ordered compositions of total into the given number of parts >= 1."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _product(choice_lists):
    if not choice_lists:
        yield ()
        return
    for head in choice_lists[0]:
        for rest in _product(choice_lists[1:]):
            yield (head,) + rest

"""Spin parity of square-tiled surfaces with all cone orders even.

The parity is the Arf invariant of the winding-number quadratic form
q(c) = ind(c) + 1 (mod 2) on H_1(S; Z/2).  We work on the dual 1-skeleton
whose nodes are squares and whose edges are the right- and top-gluings:
paths there run through square centers and edge midpoints, safely away from
the cone points.  A homology class is an edge set mod 2; smoothing it inside
every square with a non-crossing chord matching turns it into a disjoint
union of simple closed curves, on which q is the sum of (turning number + 1).
The intersection form is computed from exact crossings of the chord systems,
with a distinct rational offset per system so strands sharing an edge stay
disjoint.
"""
from __future__ import annotations

from fractions import Fraction

from . import perms

# ports of a square, in counterclockwise boundary order
L, B, R, T = 0, 1, 2, 3

# heading (quarter turns ccw from east) when entering/exiting through a port
_ENTRY_HEADING = {L: 0, B: 1, R: 2, T: 3}
_EXIT_HEADING = {R: 0, T: 1, L: 2, B: 3}

class SpinNotApplicableError(ValueError):
    """Raised when some cone order is odd."""


def spin_parity(o) -> int:
    """0 for even, 1 for odd spin structure."""
    st = o.stratum()  # raises on disconnected input
    if any(mi % 2 for mi in st.m):
        raise SpinNotApplicableError(f"stratum {st} has an odd cone order")
    g = st.genus
    n = o.n_squares
    cycles = _fundamental_cycles(o)
    systems = [_Smoothing(o, mask) for mask in cycles]
    k = len(systems)
    qvec = [s.q_value() for s in systems]
    omega = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            x = systems[i].crossings_with(systems[j]) & 1
            omega[i][j] = omega[j][i] = x
    omega_rows = [sum(row[j] << j for j in range(k)) for row in omega]

    def pair(x: int, y: int) -> int:
        acc = 0
        xx = x
        while xx:
            a = (xx & -xx).bit_length() - 1
            xx &= xx - 1
            acc ^= (omega_rows[a] & y).bit_count() & 1
        return acc

    def quad(x: int) -> int:
        bits = []
        xx = x
        while xx:
            a = (xx & -xx).bit_length() - 1
            xx &= xx - 1
            bits.append(a)
        val = 0
        for idx, a in enumerate(bits):
            val ^= qvec[a]
            for b in bits[idx + 1 :]:
                val ^= omega[a][b]
        return val

    # symplectic Gram-Schmidt over GF(2); leftover vectors span the radical
    vecs = [1 << i for i in range(k)]
    arf = 0
    npairs = 0
    while True:
        found = None
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                if pair(vecs[i], vecs[j]):
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        a, b = vecs[i], vecs[j]
        rest = [w for idx, w in enumerate(vecs) if idx not in (i, j)]
        vecs = [w ^ (a if pair(w, b) else 0) ^ (b if pair(w, a) else 0) for w in rest]
        arf ^= quad(a) & quad(b)
        npairs += 1
    if npairs != g:
        raise RuntimeError(
            f"intersection form rank {2 * npairs} != 2g = {2 * g} on {o.to_text()}"
        )
    return arf


def _fundamental_cycles(o) -> list[int]:
    """Edge masks of the N+1 fundamental cycles of the dual 1-skeleton.

    Edge ids: right-gluing of square i is bit i, top-gluing is bit N+i.
    """
    n = o.n_squares
    h, v = o.h, o.v
    path_mask = [0] * n  # xor of tree edges from root to each square
    seen = [False] * n
    seen[0] = True
    queue = [0]
    tree_edges = set()
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for edge, y in ((x, h[x]), (n + x, v[x])):
            if not seen[y]:
                seen[y] = True
                tree_edges.add(edge)
                path_mask[y] = path_mask[x] ^ (1 << edge)
                queue.append(y)
    if not all(seen):
        from .origami import DisconnectedSurfaceError

        raise DisconnectedSurfaceError("spin parity needs a connected surface")
    out = []
    for edge in range(2 * n):
        if edge in tree_edges:
            continue
        i = edge if edge < n else edge - n
        j = h[i] if edge < n else v[i]
        out.append((1 << edge) ^ path_mask[i] ^ path_mask[j])
    assert len(out) == n + 1
    return out


class _Smoothing:
    """A homology class smoothed to disjoint simple curves, with geometry."""

    def __init__(self, o, mask: int):
        self.o = o
        self.mask = mask
        n = o.n_squares
        self.offset = Fraction(0)  # set per system before crossings
        # ports used in each square
        used: dict[int, list[int]] = {}
        h, v = o.h, o.v
        for i in range(n):
            if mask >> i & 1:  # right edge of i
                used.setdefault(i, []).append(R)
                used.setdefault(h[i], []).append(L)
            if mask >> (n + i) & 1:  # top edge of i
                used.setdefault(i, []).append(T)
                used.setdefault(v[i], []).append(B)
        self.matching: dict[int, dict[int, int]] = {}
        for sq, ports in used.items():
            ports.sort()
            if len(ports) == 2:
                pairs = [(ports[0], ports[1])]
            elif len(ports) == 4:
                pairs = [(L, B), (R, T)]  # fixed non-crossing smoothing
            else:
                raise AssertionError(f"odd port count {ports} in square {sq}")
            m: dict[int, int] = {}
            for a, b in pairs:
                m[a] = b
                m[b] = a
            self.matching[sq] = m

    def set_offset(self, delta: Fraction) -> None:
        self.offset = delta

    # -- curve tracing ------------------------------------------------------

    def q_value(self) -> int:
        """Sum over smoothed curves of (turning number + 1), mod 2."""
        hinv = perms.inverse(self.o.h)
        vinv = perms.inverse(self.o.v)
        step_out = {R: self.o.h, L: hinv, T: self.o.v, B: vinv}
        visited: set[tuple[int, int]] = set()
        total = 0
        for sq, m in sorted(self.matching.items()):
            for port_in in m:
                if (sq, port_in) in visited:
                    continue
                turns = 0
                cur, pin = sq, port_in
                while (cur, pin) not in visited:
                    visited.add((cur, pin))
                    pout = self.matching[cur][pin]
                    visited.add((cur, pout))  # blocks the reverse traversal
                    turns += {0: 0, 1: 1, 3: -1}[
                        (_EXIT_HEADING[pout] - _ENTRY_HEADING[pin]) % 4
                    ]
                    cur = step_out[pout][cur]
                    pin = {R: L, L: R, T: B, B: T}[pout]
                assert turns % 4 == 0
                total += turns // 4 + 1
        return total & 1

    # -- exact crossing count -----------------------------------------------

    def _chords(self, sq: int) -> list[tuple]:
        m = self.matching.get(sq)
        if not m:
            return []
        done = set()
        out = []
        for a, b in m.items():
            if (b, a) in done:
                continue
            done.add((a, b))
            out.append((_port_point(a, self.offset), _port_point(b, self.offset)))
        return out

    def crossings_with(self, other: "_Smoothing") -> int:
        self.set_offset(Fraction(1, 64))
        other.set_offset(Fraction(3, 64))
        total = 0
        for sq in self.matching.keys() & other.matching.keys():
            for s1 in self._chords(sq):
                for s2 in other._chords(sq):
                    if _segments_cross(s1, s2):
                        total += 1
        return total


def _port_point(port: int, delta: Fraction) -> tuple[Fraction, Fraction]:
    half = Fraction(1, 2) + delta
    if port == L:
        return (Fraction(0), half)
    if port == R:
        return (Fraction(1), half)
    if port == B:
        return (half, Fraction(0))
    return (half, Fraction(1))


def _segments_cross(s1, s2) -> bool:
    """Proper (transversal, interior) crossing of two straight segments."""
    (a, b), (c, d) = s1, s2

    def orient(p, q, r):
        val = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (val > 0) - (val < 0)

    return (
        orient(a, b, c) * orient(a, b, d) < 0
        and orient(c, d, a) * orient(c, d, b) < 0
    )

"""Square-tiled surfaces as pairs of permutations.

An origami on N squares is a pair (h, v): ``h[i]`` is the square to the
right of square i and ``v[i]`` the square above it.  Singularities are read
off the commutator, horizontal cylinders off the rows of h, and SL(2,Z)
acts through the shear T and the rotation S.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import perms
from .strata import Component, Stratum, components_of

# SL(2,Z) generators: T is the horizontal shear [[1,1],[0,1]], S the rotation
# [[0,-1],[1,0]].  On gluing pairs: T.(h,v) = (h, v h^-1), S.(h,v) = (v^-1, h);
# both leave the commutator cycle type (hence the stratum) unchanged.
T_MAT = ((1, 1), (0, 1))
S_MAT = ((0, -1), (1, 0))


class DisconnectedSurfaceError(ValueError):
    """Raised when an operation needs a connected surface."""


class OrigamiFormatError(ValueError):
    """Strict-parser error with the offending position."""

    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.pos = pos


class Origami:
    """Immutable square-tiled surface given by right/top gluings."""

    def __init__(self, h, v):
        h = perms.check_perm(h)
        v = perms.check_perm(v)
        if len(h) != len(v):
            raise ValueError("h and v must act on the same squares")
        if len(h) == 0:
            raise ValueError("an origami needs at least one square")
        self.h = h
        self.v = v

    @property
    def n_squares(self) -> int:
        return len(self.h)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Origami) and self.h == other.h and self.v == other.v
        )

    def __hash__(self) -> int:
        return hash((self.h, self.v))

    def __repr__(self) -> str:
        return f"Origami.from_text({self.to_text()!r})"

    # -- text format ------------------------------------------------------

    def to_text(self) -> str:
        return (
            f"{self.n_squares};"
            f"h={perms.cycle_string(self.h)};v={perms.cycle_string(self.v)}"
        )

    @staticmethod
    def from_text(text: str) -> "Origami":
        return parse_origami(text)

    # -- topology ---------------------------------------------------------

    @cached_property
    def commutator(self) -> tuple[int, ...]:
        """h v h^-1 v^-1; its nontrivial cycles are the cone points."""
        return perms.commutator(self.h, self.v)

    @cached_property
    def is_connected(self) -> bool:
        n = self.n_squares
        seen = [False] * n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            x = stack.pop()
            for y in (self.h[x], self.v[x]):
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    stack.append(y)
        return count == n

    @cached_property
    def is_torus(self) -> bool:
        return all(self.commutator[i] == i for i in range(self.n_squares))

    def stratum(self) -> Stratum:
        """Stratum from the commutator cycle type; the torus gives Stratum(())."""
        if not self.is_connected:
            raise DisconnectedSurfaceError("stratum is defined for connected surfaces")
        orders = sorted(
            (len(c) - 1 for c in perms.cycles(self.commutator)), reverse=True
        )
        return Stratum(tuple(orders))

    @cached_property
    def singular_squares(self) -> frozenset[int]:
        """Squares whose lower-left corner is a cone point."""
        bad = set()
        for c in perms.cycles(self.commutator):
            bad.update(c)
        return frozenset(bad)

    def euler_characteristic(self) -> int:
        """V - E + F of the square cell complex (V from commutator cycles)."""
        n_vertices = len(perms.cycles(self.commutator, trivial=True))
        return n_vertices - 2 * self.n_squares + self.n_squares

    # -- automorphisms and canonical form ----------------------------------

    def automorphism_count(self) -> int:
        """Size of the simultaneous centralizer of (h, v)."""
        if self.is_connected:
            return len(self._centralizer_images())
        # product over isomorphism classes of components: |Z|^k * k!
        comps = self._components()
        classes: dict[tuple, list[Origami]] = {}
        for sub in comps:
            classes.setdefault(sub.canonical_pair(), []).append(sub)
        total = 1
        for key, group in classes.items():
            z = group[0].automorphism_count()
            k = len(group)
            fact = 1
            for j in range(2, k + 1):
                fact *= j
            total *= z**k * fact
        return total

    def _components(self) -> list["Origami"]:
        n = self.n_squares
        comp = [-1] * n
        comps = []
        for root in range(n):
            if comp[root] >= 0:
                continue
            idx = len(comps)
            members = [root]
            comp[root] = idx
            stack = [root]
            while stack:
                x = stack.pop()
                for y in (self.h[x], self.v[x]):
                    if comp[y] < 0:
                        comp[y] = idx
                        members.append(y)
                        stack.append(y)
            members.sort()
            local = {x: i for i, x in enumerate(members)}
            hh = tuple(local[self.h[x]] for x in members)
            vv = tuple(local[self.v[x]] for x in members)
            comps.append(Origami(hh, vv))
        return comps

    def _centralizer_images(self) -> list[tuple[int, ...]]:
        """All s with s h s^-1 = h, s v s^-1 = v (connected case: <= N, free action)."""
        return _equivariant_bijections(self.h, self.v, self.h, self.v)

    def canonical_pair(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Lexicographically least (h, v) over simultaneous relabeling.

        Works by trying every base square as BFS root (branch and bound on
        the partial relabeling) instead of scanning all N! conjugations;
        connected surfaces only.
        """
        if not self.is_connected:
            raise DisconnectedSurfaceError("canonical form needs a connected surface")
        n = self.n_squares
        best: tuple[tuple[int, ...], tuple[int, ...]] | None = None
        for base in range(n):
            relab = _bfs_relabel(self.h, self.v, base)
            hh = tuple(relab[self.h[x]] for x in _inverse_order(relab))
            vv = tuple(relab[self.v[x]] for x in _inverse_order(relab))
            cand = (hh, vv)
            if best is None or cand < best:
                best = cand
        assert best is not None
        return best

    def canonical(self) -> "Origami":
        h, v = self.canonical_pair()
        return Origami(h, v)

    def relabel(self, s) -> "Origami":
        """Simultaneous conjugation by s."""
        return Origami(perms.conjugate(self.h, s), perms.conjugate(self.v, s))

    # -- cylinders ----------------------------------------------------------

    def horizontal_cylinders(self) -> list["Cylinder"]:
        """Maximal horizontal cylinders (rows of h merged across smooth seams)."""
        if not self.is_connected:
            raise DisconnectedSurfaceError("cylinders need a connected surface")
        h, v = self.h, self.v
        rows = perms.cycles(h, trivial=True)
        row_of = [0] * self.n_squares
        for r, row in enumerate(rows):
            for x in row:
                row_of[x] = r
        # rows merge with the row above when the seam carries no cone point
        parent = list(range(len(rows)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for r, row in enumerate(rows):
            if all(v[h[i]] == h[v[i]] for i in row):
                a, b = find(r), find(row_of[v[row[0]]])
                if a != b:
                    parent[a] = b
        groups: dict[int, list[int]] = {}
        for r in range(len(rows)):
            groups.setdefault(find(r), []).append(r)
        cyls = []
        for members in groups.values():
            width = len(rows[members[0]])
            squares = frozenset(x for r in members for x in rows[r])
            assert all(len(rows[r]) == width for r in members)
            cyls.append(Cylinder(width=width, height=len(members), squares=squares))
        cyls.sort(key=lambda c: (-c.width, -c.height, min(c.squares)))
        assert sum(c.width * c.height for c in cyls) == self.n_squares
        return cyls

    # -- SL(2,Z) ------------------------------------------------------------

    def act(self, gen: str) -> "Origami":
        """Apply a generator: 'T' (shear), 'S' (rotation), or their inverses."""
        h, v = self.h, self.v
        if gen == "T":
            return Origami(h, perms.compose(v, perms.inverse(h)))
        if gen == "T^-1":
            return Origami(h, perms.compose(v, h))
        if gen == "S":
            return Origami(perms.inverse(v), h)
        if gen == "S^-1":
            return Origami(v, perms.inverse(h))
        raise ValueError(f"unknown generator {gen!r}")

    def act_T_power(self, k: int) -> "Origami":
        """T^k in one pass (v -> v h^-k)."""
        return Origami(self.h, perms.compose(self.v, perms.power(self.h, -k)))


@dataclass(frozen=True)
class Cylinder:
    width: int
    height: int
    squares: frozenset[int]

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("cylinder dimensions must be positive")
        if self.width * self.height != len(self.squares):
            raise ValueError("cylinder area must match its square set")


def _bfs_relabel(h, v, base: int) -> list[int]:
    """new label of each square, BFS from base with moves tried in order h, v."""
    n = len(h)
    relab = [-1] * n
    relab[base] = 0
    queue = [base]
    next_label = 1
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for y in (h[x], v[x]):
            if relab[y] < 0:
                relab[y] = next_label
                next_label += 1
                queue.append(y)
    if next_label != n:
        raise DisconnectedSurfaceError("BFS relabeling needs a connected surface")
    return relab


def _inverse_order(relab: list[int]) -> list[int]:
    """squares listed by their new label."""
    order = [0] * len(relab)
    for old, new in enumerate(relab):
        order[new] = old
    return order


def _equivariant_bijections(h1, v1, h2, v2) -> list[tuple[int, ...]]:
    """All s with s h1 s^-1 = h2 and s v1 s^-1 = v2, i.e. s h1 = h2 s.

    For a transitive (h1, v1) the solutions are determined by s(0), so at
    most N candidates are tried, each extended by BFS; non-transitive pairs
    fall back to trying each candidate from every component root (only used
    on connected surfaces in practice).
    """
    n = len(h1)
    out = []
    for target in range(n):
        s = [-1] * n
        s[0] = target
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for move1, move2 in ((h1, h2), (v1, v2)):
                y = move1[x]
                img = move2[s[x]]
                if s[y] < 0:
                    s[y] = img
                    stack.append(y)
                elif s[y] != img:
                    ok = False
                    break
        if not ok or -1 in s:
            continue
        if perms.is_perm(s):
            # re-verify both equations (BFS only enforces forward moves)
            st = tuple(s)
            if perms.conjugate(h1, st) == h2 and perms.conjugate(v1, st) == v2:
                out.append(st)
    return out


def anti_involutions(o: Origami) -> list[tuple[int, ...]]:
    """All square bijections conjugating (h, v) to (h^-1, v^-1)."""
    return _equivariant_bijections(
        o.h, o.v, perms.inverse(o.h), perms.inverse(o.v)
    )


def _vertex_action(o: Origami, s) -> dict[int, int]:
    """Induced map on vertices (commutator cycles) of the -Id map given by s.

    The map sends the lower-left corner of square i to the upper-right
    corner of s(i), which is the lower-left corner of h(v(s(i))).
    """
    h, v = o.h, o.v
    cyc_id = [-1] * o.n_squares
    cycs = perms.cycles(o.commutator, trivial=True)
    for k, cyc in enumerate(cycs):
        for x in cyc:
            cyc_id[x] = k
    return {k: cyc_id[h[v[s[cyc[0]]]]] for k, cyc in enumerate(cycs)}


def involution_fixed_points(o: Origami, s) -> int:
    """Fixed points on the surface of the -Id affine map given by s.

    Counts fixed square centers, fixed vertical and horizontal edge
    midpoints, and fixed vertices of the cell complex.
    """
    h, v = o.h, o.v
    n = o.n_squares
    fixed = sum(1 for i in range(n) if s[i] == i)
    fixed += sum(1 for i in range(n) if s[i] == h[i])
    fixed += sum(1 for i in range(n) if s[i] == v[i])
    fixed += sum(1 for k, img in _vertex_action(o, s).items() if img == k)
    return fixed


def hyperelliptic_involutions(o: Origami) -> list[tuple[int, ...]]:
    """Square relabelings realizing an involution with genus-0 quotient.

    By Riemann-Hurwitz the quotient has genus 0 exactly when the involution
    has 2g+2 fixed points.  Candidates are the (at most N) solutions of
    s h s^-1 = h^-1, s v s^-1 = v^-1.
    """
    if not o.is_connected:
        raise DisconnectedSurfaceError("hyperellipticity needs a connected surface")
    st = o.stratum()
    if st.is_degenerate:
        raise ValueError("hyperellipticity is not defined for the torus stratum")
    want = 2 * st.genus + 2
    ident = perms.identity(o.n_squares)
    return [
        s
        for s in anti_involutions(o)
        if perms.compose(s, s) == ident and involution_fixed_points(o, s) == want
    ]


def is_hyperelliptic(o: Origami) -> bool:
    """True when the surface lies in the hyperelliptic locus.

    Note this is a statement about the surface, not about the component:
    in the pair strata H(g-1,g-1) the hyperelliptic *component* consists
    only of surfaces whose involution exchanges the two cone points, while
    surfaces whose involution fixes both sit inside another component (see
    ``component_of``).
    """
    return bool(hyperelliptic_involutions(o))


def _involution_swaps_zeros(o: Origami, s) -> bool:
    act = _vertex_action(o, s)
    cycs = perms.cycles(o.commutator, trivial=True)
    zeros = [k for k, cyc in enumerate(cycs) if len(cyc) > 1]
    if len(zeros) != 2:
        raise ValueError("swap test applies to two-zero strata")
    return act[zeros[0]] == zeros[1]


def component_of(o: Origami) -> Component:
    """Connected component of the ambient stratum containing this origami.

    Membership in the hyperelliptic component of H(g-1,g-1) requires the
    involution to swap the two cone points; the hyperelliptic locus inside
    the other components (involution fixing both) is classified by its spin
    parity like any other surface.
    """
    st = o.stratum()
    comps = components_of(st)
    if comps == [Component.CONNECTED]:
        return Component.CONNECTED
    if Component.HYPERELLIPTIC in comps:
        invs = hyperelliptic_involutions(o)
        if invs and (
            st.n_zeros == 1 or any(_involution_swaps_zeros(o, s) for s in invs)
        ):
            return Component.HYPERELLIPTIC
    if Component.NONHYPERELLIPTIC in comps:
        return Component.NONHYPERELLIPTIC
    from .spin import spin_parity

    parity = spin_parity(o)
    got = Component.EVEN_SPIN if parity == 0 else Component.ODD_SPIN
    if got not in comps:
        # in H(4)/H(2,2) the even-parity class IS the hyperelliptic component
        raise RuntimeError(
            f"classification clash: {got} not among {comps} for {o.to_text()}"
        )
    return got


# -- strict text parser -----------------------------------------------------


def parse_origami(text: str) -> Origami:
    """Parse 'N;h=(...)(...);v=(...)' with explicit error positions."""
    pos = 0

    def fail(msg: str):
        raise OrigamiFormatError(text, pos, msg)

    def expect(tok: str):
        nonlocal pos
        if not text.startswith(tok, pos):
            fail(f"expected {tok!r}")
        pos += len(tok)

    def read_int() -> int:
        nonlocal pos
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start:
            fail("expected digit")
        return int(text[start:pos])

    n = read_int()
    if n <= 0:
        fail("square count must be positive")

    def read_cycles() -> list[list[int]]:
        nonlocal pos
        cycs = []
        used: set[int] = set()
        if pos >= len(text) or text[pos] != "(":
            fail("expected '('")
        while pos < len(text) and text[pos] == "(":
            pos += 1
            cyc: list[int] = []
            if pos < len(text) and text[pos] == ")":
                pos += 1
                cycs.append(cyc)
                continue
            while True:
                tok_start = pos
                x = read_int()
                if x >= n:
                    pos = tok_start
                    fail(f"square index {x} out of range 0..{n - 1}")
                if x in used:
                    pos = tok_start
                    fail(f"cycles are not disjoint at {x}")
                used.add(x)
                cyc.append(x)
                if pos < len(text) and text[pos] == ",":
                    pos += 1
                    continue
                expect(")")
                break
            cycs.append(cyc)
        return cycs

    expect(";h=")
    h_cycs = read_cycles()
    expect(";v=")
    v_cycs = read_cycles()
    if pos != len(text):
        fail("trailing characters")
    try:
        h = perms.from_cycles(n, h_cycs)
        v = perms.from_cycles(n, v_cycs)
    except ValueError as exc:
        raise OrigamiFormatError(text, pos, str(exc)) from exc
    return Origami(h, v)

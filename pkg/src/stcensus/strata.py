"""Strata of translation surfaces: partitions, components, closed formulas.

A stratum is determined by the unordered partition m = (m_1 >= ... >= m_n) of
2g-2 recording the cone-point orders.  This module carries the exact
evaluation of every closed formula we test: the conjectural large-genus
volume 4/prod(m_i+1), the hyperelliptic volumes and their asymptotic forms,
the hyperelliptic c_area values, and the Lyapunov-sum formula.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import ExactReal, double_factorial

Partition = tuple[int, ...]


class DegenerateStratumError(ValueError):
    """Raised when an operation does not apply to the torus stratum (m empty)."""


def partitions_of(s: int) -> list[Partition]:
    """All partitions of s, reverse-lexicographic, parts non-increasing."""
    if s < 0:
        raise ValueError("s must be >= 0")
    out: list[Partition] = []

    def rec(remaining: int, maxpart: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(maxpart, remaining), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(s, s, [])
    return out


def validate_partition(parts) -> Partition:
    parts = tuple(int(x) for x in parts)
    if any(x < 1 for x in parts):
        raise ValueError(f"partition parts must be >= 1: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition parts must be non-increasing: {parts}")
    return parts


class Component(enum.Enum):
    CONNECTED = "connected"
    HYPERELLIPTIC = "hyperelliptic"
    EVEN_SPIN = "even-spin"
    ODD_SPIN = "odd-spin"
    NONHYPERELLIPTIC = "nonhyperelliptic"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Stratum:
    """Stratum H(m_1,...,m_n); the empty partition is the (degenerate) torus."""

    m: Partition

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", validate_partition(self.m))
        if sum(self.m) % 2 != 0:
            raise ValueError(f"sum of cone orders must be even: {self.m}")

    @property
    def genus(self) -> int:
        return sum(self.m) // 2 + 1

    @property
    def n_zeros(self) -> int:
        return len(self.m)

    @property
    def is_degenerate(self) -> bool:
        return sum(self.m) == 0

    @property
    def dimension(self) -> int:
        """Complex dimension 2g + n - 1."""
        return 2 * self.genus + self.n_zeros - 1

    @property
    def min_squares(self) -> int:
        """Smallest number of squares a surface in this stratum can have."""
        return sum(mi + 1 for mi in self.m) if self.m else 1

    def __str__(self) -> str:
        return format_stratum(self)

    def __repr__(self) -> str:
        return f"Stratum({list(self.m)})"


def format_stratum(st: Stratum) -> str:
    return ",".join(str(x) for x in st.m)


def parse_stratum(text: str) -> Stratum:
    """Strict parse of 'm1,m2,...' with non-increasing positive parts."""
    if text == "":
        return Stratum(())
    parts = []
    for tok in text.split(","):
        if not tok or not tok.isdigit():
            raise ValueError(f"bad stratum token {tok!r} in {text!r}")
        parts.append(int(tok))
    if any(x < 1 for x in parts):
        raise ValueError(f"stratum parts must be positive: {text!r}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"stratum parts must be non-increasing: {text!r}")
    return Stratum(tuple(parts))


def strata_of_genus(g: int) -> list[Stratum]:
    """All strata of genus g, in reverse-lexicographic partition order."""
    if g < 2:
        raise ValueError("need g >= 2")
    return [Stratum(m) for m in partitions_of(2 * g - 2)]


def components_of(st: Stratum) -> list[Component]:
    """Connected components, classified by spin parity and hyperellipticity.

    For g >= 4 the rule is: the two special strata H(2g-2) and H(g-1,g-1)
    carry a hyperelliptic component; strata with all orders even split by
    spin parity.  Genus 2 and 3 are exceptional and hard-coded (each case is
    regression-tested against the census classifiers).
    """
    if st.is_degenerate:
        raise DegenerateStratumError("torus stratum has no component classification")
    g = st.genus
    m = st.m
    all_even = all(x % 2 == 0 for x in m)
    if g == 2:
        return [Component.CONNECTED]
    if g == 3:
        if m == (4,) or m == (2, 2):
            return [Component.HYPERELLIPTIC, Component.ODD_SPIN]
        return [Component.CONNECTED]
    minimal = m == (2 * g - 2,)
    pair = m == (g - 1, g - 1)
    if minimal or (pair and (g - 1) % 2 == 0):
        return [Component.HYPERELLIPTIC, Component.EVEN_SPIN, Component.ODD_SPIN]
    if pair:
        return [Component.HYPERELLIPTIC, Component.NONHYPERELLIPTIC]
    if all_even:
        return [Component.EVEN_SPIN, Component.ODD_SPIN]
    return [Component.CONNECTED]


def conjectural_volume(st: Stratum) -> ExactReal:
    """The conjectural large-genus volume 4 / prod(m_i + 1)."""
    den = 1
    for mi in st.m:
        den *= mi + 1
    return ExactReal(Fraction(4, den), 0)


def labeling_factor(st: Stratum) -> int:
    """prod r_j! over multiplicities r_j of repeated cone orders.

    Converts counts of surfaces with indistinguishable cone points to the
    named-points normalization used by the exact volume tables.
    """
    fac = 1
    run = 1
    for i in range(1, len(st.m)):
        if st.m[i] == st.m[i - 1]:
            run += 1
            fac *= run
        else:
            run = 1
    return fac


def complete_with_ones(m, g: int) -> Partition:
    """Pad m with 2g-2-|m| ones (the padded family of strata)."""
    m = validate_partition(m)
    deficit = 2 * g - 2 - sum(m)
    if deficit <= 0:
        raise ValueError(f"genus {g} too small to pad {m}: need 2g-2 > {sum(m)}")
    return tuple(sorted(m + (1,) * deficit, reverse=True))


def hyperelliptic_volume_minimal(g: int) -> ExactReal:
    """Exact volume of the hyperelliptic component of H(2g-2)."""
    if g < 2:
        raise ValueError("need g >= 2")
    coeff = Fraction(2, math.factorial(2 * g + 1)) * Fraction(
        double_factorial(2 * g - 3), double_factorial(2 * g - 2)
    )
    return ExactReal(coeff, 2 * g)


def hyperelliptic_volume_pair(g: int) -> ExactReal:
    """Exact volume of the hyperelliptic component of H(g-1,g-1)."""
    if g < 2:
        raise ValueError("need g >= 2")
    coeff = Fraction(4, math.factorial(2 * g + 2)) * Fraction(
        double_factorial(2 * g - 2), double_factorial(2 * g - 1)
    )
    return ExactReal(coeff, 2 * g)


def hyperelliptic_volume_asymptotic(which: str, g: int) -> float:
    """Large-g asymptotic form of the hyperelliptic volumes.

    ``which`` is 'minimal' for (1/(pi^2 g)) (pi e/(2g+1))^(2g+1) or 'pair'
    for the analogous (2g+2)-power expression.
    """
    if g < 2:
        raise ValueError("need g >= 2")
    if which == "minimal":
        k = 2 * g + 1
    elif which == "pair":
        k = 2 * g + 2
    else:
        raise ValueError(f"which must be 'minimal' or 'pair', got {which!r}")
    return (math.pi * math.e / k) ** k / (math.pi**2 * g)


def carea_hyperelliptic_minimal(g: int) -> ExactReal:
    """c_area of the hyperelliptic component of H(2g-2): (2g+1)g/(pi^2(2g-1))."""
    if g < 2:
        raise ValueError("need g >= 2")
    return ExactReal(Fraction((2 * g + 1) * g, 2 * g - 1), -2)


def carea_hyperelliptic_pair(g: int) -> ExactReal:
    """c_area of the hyperelliptic component of H(g-1,g-1): (2g+1)(g+1)/(2g pi^2)."""
    if g < 2:
        raise ValueError("need g >= 2")
    return ExactReal(Fraction((2 * g + 1) * (g + 1), 2 * g), -2)


def sv_conjecture_value() -> Fraction:
    """Conjectured universal large-genus limit of c_area."""
    return Fraction(1, 2)


def lyapunov_combinatorial_term(st: Stratum) -> Fraction:
    """(1/12) sum m_i(m_i+2)/(m_i+1)."""
    return Fraction(1, 12) * sum(
        (Fraction(mi * (mi + 2), mi + 1) for mi in st.m), Fraction(0)
    )


def lyapunov_sum(st: Stratum, carea: "ExactReal | float") -> "ExactReal | float":
    """Sum of the g Lyapunov exponents from c_area.

    The formula is (1/12) sum m_i(m_i+2)/(m_i+1) + (pi^2/3) c_area.  Passing
    c_area as an ExactReal with pi_exp = -2 (the shape of all closed-form
    constants here) gives an exact rational result; a float gives a float.
    The conjectural c_area = 1/2 gives combinatorial term + pi^2/6.
    """
    comb = lyapunov_combinatorial_term(st)
    if isinstance(carea, ExactReal):
        if carea.pi_exp == -2:
            return ExactReal(comb + carea.coeff / 3, 0)
        if carea.coeff == 0:
            return ExactReal(comb, 0)
        raise ValueError("exact c_area must be rational/pi^2")
    return float(comb) + (math.pi**2 / 3) * carea


@dataclass(frozen=True)
class EpsilonRecord:
    """One epsilon observation: eps1 (volume), eps2 (even/odd) or eps3 (lambda-sum)."""

    stratum: Stratum
    eps: float
    which: str  # eps1 | eps2 | eps3
    provenance: str  # closed-form | census | ingested

    def __post_init__(self) -> None:
        if self.which not in ("eps1", "eps2", "eps3"):
            raise ValueError(f"unknown epsilon kind {self.which!r}")
        if self.provenance not in ("closed-form", "census", "ingested"):
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.eps <= -1:
            raise ValueError(f"1+eps must stay positive, got eps={self.eps}")

"""Exact real numbers of the form (rational) * pi^k.

Every closed-form volume and Siegel-Veech constant in this package is such a
number, so we keep them exact and convert to float only at the edge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ExactReal:
    """An exact value ``coeff * pi**pi_exp`` with rational coeff."""

    coeff: Fraction
    pi_exp: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))

    def value(self, digits: int | None = None) -> float:
        """Convert to float.

        With ``digits=None`` this uses the 64-bit ``math.pi`` (result is the
        double nearest the exact value up to one rounding of the final
        multiply).  With ``digits`` set, pi is taken to that many significant
        digits via mpmath before rounding to a double.
        """
        if digits is None:
            return float(self.coeff) * math.pi**self.pi_exp
        import mpmath

        with mpmath.workdps(digits):
            v = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            v *= mpmath.pi**self.pi_exp
            return float(v)

    def __mul__(self, other: "ExactReal | Fraction | int") -> "ExactReal":
        if isinstance(other, ExactReal):
            return ExactReal(self.coeff * other.coeff, self.pi_exp + other.pi_exp)
        return ExactReal(self.coeff * other, self.pi_exp)

    __rmul__ = __mul__

    def __truediv__(self, other: "ExactReal | Fraction | int") -> "ExactReal":
        if isinstance(other, ExactReal):
            return ExactReal(self.coeff / other.coeff, self.pi_exp - other.pi_exp)
        return ExactReal(self.coeff / other, self.pi_exp)

    def __add__(self, other: "ExactReal") -> "ExactReal":
        if not isinstance(other, ExactReal):
            return NotImplemented
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if self.pi_exp != other.pi_exp:
            raise ValueError(
                f"cannot add exactly: pi^{self.pi_exp} vs pi^{other.pi_exp}"
            )
        return ExactReal(self.coeff + other.coeff, self.pi_exp)

    def __neg__(self) -> "ExactReal":
        return ExactReal(-self.coeff, self.pi_exp)

    def __sub__(self, other: "ExactReal") -> "ExactReal":
        return self + (-other)

    def is_rational(self) -> bool:
        return self.pi_exp == 0 or self.coeff == 0

    def __str__(self) -> str:
        if self.pi_exp == 0 or self.coeff == 0:
            return str(self.coeff)
        if self.pi_exp == 1:
            return f"{self.coeff}*pi"
        return f"{self.coeff}*pi^{self.pi_exp}"


def double_factorial(n: int) -> int:
    """n!! with the usual conventions (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError("double factorial needs n >= -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out

import math
from fractions import Fraction

import pytest

from stcensus.exact import ExactReal, double_factorial
from stcensus.strata import (
    Component,
    DegenerateStratumError,
    EpsilonRecord,
    Stratum,
    carea_hyperelliptic_minimal,
    carea_hyperelliptic_pair,
    complete_with_ones,
    components_of,
    conjectural_volume,
    format_stratum,
    hyperelliptic_volume_asymptotic,
    hyperelliptic_volume_minimal,
    hyperelliptic_volume_pair,
    labeling_factor,
    lyapunov_sum,
    parse_stratum,
    partitions_of,
    strata_of_genus,
    sv_conjecture_value,
)


def test_partitions_small():
    assert partitions_of(0) == [()]
    assert partitions_of(2) == [(2,), (1, 1)]
    assert len(partitions_of(6)) == 11


def brute_partitions(s):
    # independent recursive enumeration
    if s == 0:
        return {()}
    out = set()
    for first in range(1, s + 1):
        for rest in brute_partitions(s - first):
            out.add(tuple(sorted((first,) + rest, reverse=True)))
    return out


def test_partitions_against_bruteforce():
    for s in range(11):
        got = partitions_of(s)
        assert len(got) == len(set(got)), "duplicates"
        assert set(got) == brute_partitions(s)
        assert all(sum(p) == s for p in got)
        # reverse-lexicographic order
        assert got == sorted(got, reverse=True)


def test_partitions_no_duplicates_to_40():
    for s in (20, 31, 40):
        got = partitions_of(s)
        assert len(got) == len(set(got))
        assert all(sum(p) == s for p in got)


def test_stratum_basic():
    st = Stratum((2,))
    assert st.genus == 2 and st.n_zeros == 1 and st.dimension == 4
    assert Stratum((1, 1)).dimension == 5
    assert Stratum((4,)).dimension == 6  # H(2g-2) has dimension 2g
    with pytest.raises(ValueError):
        Stratum((1, 2))  # not sorted
    with pytest.raises(ValueError):
        Stratum((3,))  # odd sum
    torus = Stratum(())
    assert torus.is_degenerate and torus.genus == 1


def test_dimension_range_over_genus():
    # principal stratum has dim 4g-3, minimal stratum 2g
    for g in range(2, 51):
        assert Stratum((1,) * (2 * g - 2)).dimension == 4 * g - 3
        assert Stratum((2 * g - 2,)).dimension == 2 * g


def test_stratum_text_roundtrip():
    st = Stratum((2, 1, 1))
    assert format_stratum(st) == "2,1,1"
    assert parse_stratum("2,1,1") == st
    for bad in ("1,2", "0", "2,", "a", "2, 1"):
        with pytest.raises(ValueError):
            parse_stratum(bad)


def test_components_low_genus():
    assert components_of(Stratum((2,))) == [Component.CONNECTED]
    assert components_of(Stratum((1, 1))) == [Component.CONNECTED]
    assert components_of(Stratum((4,))) == [Component.HYPERELLIPTIC, Component.ODD_SPIN]
    assert components_of(Stratum((2, 2))) == [
        Component.HYPERELLIPTIC,
        Component.ODD_SPIN,
    ]
    for m in ((3, 1), (2, 1, 1), (1, 1, 1, 1)):
        assert components_of(Stratum(m)) == [Component.CONNECTED]
    with pytest.raises(DegenerateStratumError):
        components_of(Stratum(()))


def test_components_high_genus():
    # H(6): three components
    assert components_of(Stratum((6,))) == [
        Component.HYPERELLIPTIC,
        Component.EVEN_SPIN,
        Component.ODD_SPIN,
    ]
    # H(3,3): g=4, g-1 odd -> hyp + nonhyp
    assert components_of(Stratum((3, 3))) == [
        Component.HYPERELLIPTIC,
        Component.NONHYPERELLIPTIC,
    ]
    # H(4,4): g=5, g-1 even -> three components
    assert components_of(Stratum((4, 4))) == [
        Component.HYPERELLIPTIC,
        Component.EVEN_SPIN,
        Component.ODD_SPIN,
    ]
    # other all-even strata split by spin
    assert components_of(Stratum((4, 2))) == [Component.EVEN_SPIN, Component.ODD_SPIN]
    # strata with an odd order are connected
    assert components_of(Stratum((5, 1))) == [Component.CONNECTED]
    # length is always 1, 2 or 3; all-even g>=4 contains both spins
    for g in range(4, 9):
        for st in strata_of_genus(g):
            comps = components_of(st)
            assert 1 <= len(comps) <= 3
            if all(x % 2 == 0 for x in st.m):
                assert Component.EVEN_SPIN in comps or st.m == (g - 1, g - 1)
                assert Component.ODD_SPIN in comps or st.m == (g - 1, g - 1)


def test_conjectural_volume():
    assert conjectural_volume(Stratum((1, 1))) == ExactReal(Fraction(1), 0)
    assert conjectural_volume(Stratum((2,))) == ExactReal(Fraction(4, 3), 0)
    # principal stratum of genus g: 4/2^(2g-2)
    for g in (2, 3, 4):
        st = Stratum((1,) * (2 * g - 2))
        assert conjectural_volume(st).coeff == Fraction(4, 2 ** (2 * g - 2))
    assert conjectural_volume(Stratum((1, 1, 1, 1))).coeff == Fraction(1, 4)
    assert conjectural_volume(Stratum((2,))).is_rational()


def test_complete_with_ones():
    assert complete_with_ones((2,), 3) == (2, 1, 1)
    assert complete_with_ones((), 2) == (1, 1)
    assert complete_with_ones((3, 1), 4) == (3, 1, 1, 1)
    with pytest.raises(ValueError):
        complete_with_ones((2,), 2)  # 2g-2 = |m|


def test_hyperelliptic_volumes():
    assert hyperelliptic_volume_minimal(2) == ExactReal(Fraction(1, 120), 4)
    assert hyperelliptic_volume_pair(2) == ExactReal(Fraction(1, 270), 4)
    assert hyperelliptic_volume_minimal(3) == ExactReal(Fraction(1, 6720), 6)
    # rational * pi^(2g) shape
    for g in range(2, 12):
        assert hyperelliptic_volume_minimal(g).pi_exp == 2 * g
        assert hyperelliptic_volume_pair(g).pi_exp == 2 * g


def test_hyperelliptic_asymptotics():
    # positive, monotone decreasing, and ratio exact/asymptotic -> 1
    for which, exact_fn in (
        ("minimal", hyperelliptic_volume_minimal),
        ("pair", hyperelliptic_volume_pair),
    ):
        prev = None
        for g in range(2, 31):
            val = hyperelliptic_volume_asymptotic(which, g)
            assert val > 0
            if prev is not None:
                assert val < prev
            prev = val
        ratios = [
            exact_fn(g).value() / hyperelliptic_volume_asymptotic(which, g)
            for g in range(2, 61)
        ]
        for g, r in zip(range(2, 61), ratios):
            if g >= 20:
                assert 0.9 <= r <= 1.1
        # monotone approach to 1
        gaps = [abs(r - 1) for r in ratios]
        assert all(a >= b for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 0.01


def test_carea_hyperelliptic():
    assert carea_hyperelliptic_minimal(2) == ExactReal(Fraction(10, 3), -2)
    assert carea_hyperelliptic_pair(2) == ExactReal(Fraction(15, 4), -2)
    assert abs(carea_hyperelliptic_minimal(2).value() - 0.33773) < 1e-4
    assert abs(carea_hyperelliptic_pair(2).value() - 0.37995) < 1e-4
    # linear divergence: value ~ g/pi^2
    for g in (50, 100, 200):
        assert abs(carea_hyperelliptic_minimal(g).value() / (g / math.pi**2) - 1) < 0.05
    assert carea_hyperelliptic_minimal(2).value() != float(sv_conjecture_value())


def test_lyapunov_sum():
    st = Stratum((2,))
    exact = lyapunov_sum(st, carea_hyperelliptic_minimal(2))
    assert exact == ExactReal(Fraction(4, 3), 0)
    # conjectural variant: combinatorial + pi^2/6
    val = lyapunov_sum(st, 0.5)
    assert abs(val - (float(Fraction(2, 9)) + math.pi**2 / 6)) < 1e-12
    # zero c_area leaves the combinatorial term
    assert lyapunov_sum(st, 0.0) == pytest.approx(2 / 9)
    assert lyapunov_sum(st, ExactReal(Fraction(0), 0)) == ExactReal(Fraction(2, 9), 0)


def test_sv_conjecture_value():
    assert sv_conjecture_value() == Fraction(1, 2)


def test_labeling_factor():
    assert labeling_factor(Stratum((2,))) == 1
    assert labeling_factor(Stratum((1, 1))) == 2
    assert labeling_factor(Stratum((2, 2, 2))) == 6
    assert labeling_factor(Stratum((3, 3, 1, 1))) == 4


def test_exact_real_ops():
    a = ExactReal(Fraction(1, 2), 2)
    b = ExactReal(Fraction(1, 3), 2)
    assert (a + b).coeff == Fraction(5, 6)
    assert (a * b) == ExactReal(Fraction(1, 6), 4)
    assert (a / b) == ExactReal(Fraction(3, 2), 0)
    with pytest.raises(ValueError):
        a + ExactReal(Fraction(1), 0)
    assert abs(a.value() - math.pi**2 / 2) < 1e-12
    # high-precision conversion agrees with float route
    assert a.value(digits=50) == pytest.approx(a.value(), rel=1e-15)
    assert str(ExactReal(Fraction(3, 4), 2)) == "3/4*pi^2"
    assert double_factorial(7) == 105 and double_factorial(0) == 1


def test_epsilon_record_validation():
    st = Stratum((2,))
    EpsilonRecord(st, -0.39, "eps1", "closed-form")
    with pytest.raises(ValueError):
        EpsilonRecord(st, -1.5, "eps1", "census")
    with pytest.raises(ValueError):
        EpsilonRecord(st, 0.1, "eps9", "census")
    with pytest.raises(ValueError):
        EpsilonRecord(st, 0.1, "eps1", "guess")

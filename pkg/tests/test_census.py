import math
from fractions import Fraction
from itertools import permutations

import pytest

from stcensus import perms
from stcensus.census import (
    CensusDB,
    CountRecord,
    all_pairs_direct,
    commutator_class,
    count_by_component,
    count_direct,
    count_frobenius,
    cumulative_count,
    _pairs_transitive,
)
from stcensus.errors import BudgetExceededError, CacheConflictError
from stcensus.origami import Origami
from stcensus.strata import Component, Stratum


def brute_force_census(st, n):
    """Independent oracle: full S_n x S_n scan."""
    target = commutator_class(st, n)
    total = 0
    for h in permutations(range(n)):
        for v in permutations(range(n)):
            c = perms.commutator(h, v)
            if perms.cycle_type(c) != target:
                continue
            if Origami(h, v).is_connected:
                total += 1
    return total


def test_h2_n3_frozen_example():
    rec = count_direct(Stratum((2,)), 3)
    assert rec.pairs_transitive == 18
    assert rec.weighted == Fraction(3)
    assert rec.labeled_weighted == Fraction(3)
    assert count_frobenius(Stratum((2,)), 3).pairs_transitive == 18


def test_engines_match_bruteforce_oracle():
    cases = [
        (Stratum((2,)), 3),
        (Stratum((2,)), 4),
        (Stratum((1, 1)), 4),
        (Stratum((1, 1)), 5),
        (Stratum((4,)), 5),
    ]
    for st, n in cases:
        brute = brute_force_census(st, n)
        assert count_direct(st, n).pairs_transitive == brute
        assert count_frobenius(st, n).pairs_transitive == brute


def test_h11_n4_exhaustive():
    assert count_direct(Stratum((1, 1)), 4).pairs_transitive == 168
    # labeled factor 2 for the repeated cone order
    rec = count_frobenius(Stratum((1, 1)), 4)
    assert rec.labeled_factor == 2
    assert rec.labeled_weighted == Fraction(2 * 168, math.factorial(4))


def test_below_minimal_area_is_zero():
    assert count_direct(Stratum((2,)), 2).pairs_transitive == 0
    assert count_frobenius(Stratum((2,)), 2).pairs_transitive == 0
    assert count_frobenius(Stratum((4, 2)), 7).pairs_transitive == 0


def test_engine_equality_g2_g3():
    for g in (2, 3):
        from stcensus.strata import strata_of_genus

        for st in strata_of_genus(g):
            for n in range(st.min_squares, 8):
                a = count_direct(st, n).pairs_transitive
                b = count_frobenius(st, n).pairs_transitive
                assert a == b, (str(st), n)


def test_torus_cover_counts():
    # weighted transitive commuting pairs = sigma(k)/k
    def sigma(k):
        return sum(d for d in range(1, k + 1) if k % d == 0)

    for k in range(1, 8):
        t = _pairs_transitive((), k)
        assert Fraction(t, math.factorial(k)) == Fraction(sigma(k), k)
    # k=2: exactly 3 transitive commuting pairs in S_2
    assert _pairs_transitive((), 2) == 3
    # both engines agree on the degenerate stratum too
    for k in range(1, 7):
        assert (
            count_direct(Stratum(()), k).pairs_transitive
            == count_frobenius(Stratum(()), k).pairs_transitive
            == sigma(k) * math.factorial(k) // k
        )


def test_all_pairs_at_least_transitive():
    for st, n in ((Stratum((2,)), 6), (Stratum((1, 1)), 6)):
        alla = all_pairs_direct(st, n)
        trans = count_direct(st, n).pairs_transitive
        assert alla >= trans
    # equality exactly at the minimal area
    st = Stratum((2,))
    assert all_pairs_direct(st, 3) == count_direct(st, 3).pairs_transitive
    assert all_pairs_direct(st, 6) > count_direct(st, 6).pairs_transitive


def test_weighted_times_factorial_is_integer():
    for st, n in ((Stratum((2,)), 5), (Stratum((1, 1)), 6), (Stratum((4,)), 6)):
        rec = count_frobenius(st, n)
        assert rec.weighted * math.factorial(n) == rec.pairs_transitive


def test_budget_errors():
    with pytest.raises(BudgetExceededError) as err:
        count_direct(Stratum((2,)), 12, budget=8)
    assert err.value.reached == 8
    with pytest.raises(BudgetExceededError):
        count_frobenius(Stratum((2,)), 50, budget=40)
    with pytest.raises(BudgetExceededError):
        count_by_component(Stratum((2,)), 9, budget=8)


def test_cumulative_count():
    st = Stratum((2,))
    assert cumulative_count(st, 3) == Fraction(3)
    assert cumulative_count(st, 2) == 0
    prev = Fraction(0)
    for nmax in range(3, 9):
        cur = cumulative_count(st, nmax)
        assert cur >= prev
        prev = cur


def test_growth_rate_h2():
    # weighted shells grow ~ N^3 (d=4): least-squares log-log slope over an
    # asymptotic window lands within 0.3 of d-1
    st = Stratum((2,))
    import math as m

    pts = [
        (m.log(n), m.log(float(count_frobenius(st, n).weighted)))
        for n in range(10, 26)
    ]
    xb = sum(x for x, _ in pts) / len(pts)
    yb = sum(y for _, y in pts) / len(pts)
    slope = sum((x - xb) * (y - yb) for x, y in pts) / sum(
        (x - xb) ** 2 for x, _ in pts
    )
    assert abs(slope - 3) < 0.3, slope


def test_count_by_component_marginals():
    for st, n in ((Stratum((4,)), 5), (Stratum((4,)), 6), (Stratum((2, 2)), 6)):
        by = count_by_component(st, n)
        total = count_direct(st, n).pairs_transitive
        assert sum(r.pairs_transitive for r in by.values()) == total


def test_parallel_direct_census_matches():
    st = Stratum((1, 1))
    a = count_direct(st, 5)
    b = count_direct(st, 5, threads=2)
    assert a.pairs_transitive == b.pairs_transitive


# -- CensusDB -------------------------------------------------------------------


def test_db_roundtrip(tmp_path):
    path = tmp_path / "h2.jsonl"
    db = CensusDB(path)
    rec = count_direct(Stratum((2,)), 3)
    assert db.add(rec)
    assert not db.add(rec)  # idempotent
    db2 = CensusDB(path)
    got = db2.get(Stratum((2,)), 3, "direct")
    assert got is not None and got.pairs_transitive == 18
    assert db2.get(Stratum((2,)), 3, "frobenius") is None


def test_db_cross_engine_check(tmp_path):
    path = tmp_path / "x.jsonl"
    db = CensusDB(path)
    db.add(count_direct(Stratum((2,)), 3))
    db.add(count_frobenius(Stratum((2,)), 3))  # equal: fine
    bad = CountRecord(Stratum((2,)), 4, pairs_transitive=999, engine="frobenius")
    db.add(bad)
    with pytest.raises(CacheConflictError):
        db.add(count_direct(Stratum((2,)), 4))  # 216 != 999


def test_db_conflicting_duplicate(tmp_path):
    path = tmp_path / "y.jsonl"
    db = CensusDB(path)
    db.add(count_direct(Stratum((2,)), 3))
    with pytest.raises(CacheConflictError):
        db.add(CountRecord(Stratum((2,)), 3, pairs_transitive=17, engine="direct"))


def test_db_rejects_malformed_and_inconsistent(tmp_path):
    path = tmp_path / "z.jsonl"
    path.write_text('{"stratum": "2", "n": 3}\n')
    with pytest.raises(CacheConflictError):
        CensusDB(path)
    # stored weighted must equal pairs/n!
    path.write_text(
        '{"stratum": "2", "n": 3, "pairs": "18", "weighted_num": "5", '
        '"weighted_den": "1", "labeled_factor": 1, "engine": "direct", '
        '"created_at": "2024-01-01T00:00:00+00:00"}\n'
    )
    with pytest.raises(CacheConflictError):
        CensusDB(path)


def test_db_component_records(tmp_path):
    db = CensusDB(tmp_path / "c.jsonl")
    by = count_by_component(Stratum((4,)), 5)
    for rec in by.values():
        db.add(rec)
    again = CensusDB(tmp_path / "c.jsonl")
    got = again.get(Stratum((4,)), 5, "direct", Component.HYPERELLIPTIC)
    assert got is not None and got.pairs_transitive == 2160

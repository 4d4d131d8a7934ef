from fractions import Fraction

from stcensus.census import count_direct
from stcensus.ensemble import origamis_in_stratum
from stcensus.strata import Stratum


def test_enumeration_weight_matches_census():
    # sum of 1/|Aut| over classes equals the census weighted count: the
    # cylinder-gluing enumeration and the permutation scan are independent
    for m, lo, hi in (((2,), 3, 8), ((1, 1), 4, 7), ((4,), 5, 7), ((3, 1), 6, 7)):
        st = Stratum(m)
        for n in range(lo, hi + 1):
            oris = origamis_in_stratum(st, n)
            w = sum(Fraction(1, o.automorphism_count()) for o in oris)
            assert w == count_direct(st, n).weighted, (m, n)


def test_enumerated_origamis_are_valid_and_distinct():
    st = Stratum((2,))
    for n in (5, 9):
        oris = origamis_in_stratum(st, n)
        keys = set()
        for o in oris:
            assert o.is_connected
            assert o.stratum() == st
            assert o.n_squares == n
            key = o.canonical_pair()
            assert (o.h, o.v) == key  # stored in canonical form
            keys.add(key)
        assert len(keys) == len(oris)


def test_empty_cases():
    assert origamis_in_stratum(Stratum((2,)), 2) == ()
    assert origamis_in_stratum(Stratum(()), 5) == ()


def test_minimal_area_h2():
    oris = origamis_in_stratum(Stratum((2,)), 3)
    assert len(oris) == 3
    assert all(o.automorphism_count() == 1 for o in oris)


def test_work_budget_guard(monkeypatch):
    import pytest

    from stcensus import ensemble
    from stcensus.errors import BudgetExceededError

    monkeypatch.setattr(ensemble, "WORK_BUDGET_DEFAULT", 50)
    origamis_in_stratum.cache_clear()
    try:
        with pytest.raises(BudgetExceededError) as err:
            origamis_in_stratum(Stratum((2,)), 9)
        assert err.value.reached == 9
    finally:
        origamis_in_stratum.cache_clear()

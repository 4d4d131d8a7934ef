import random

import pytest

from stcensus import perms


def test_identity_and_check():
    assert perms.identity(4) == (0, 1, 2, 3)
    assert perms.check_perm([2, 0, 1]) == (2, 0, 1)
    with pytest.raises(ValueError):
        perms.check_perm([0, 0, 1])
    with pytest.raises(ValueError):
        perms.check_perm([0, 3, 1])


def test_compose_inverse_power():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(1, 10)
        p = perms.random_perm(n, rng)
        q = perms.random_perm(n, rng)
        assert perms.compose(p, perms.inverse(p)) == perms.identity(n)
        # (p*q)^-1 = q^-1 p^-1
        assert perms.inverse(perms.compose(p, q)) == perms.compose(
            perms.inverse(q), perms.inverse(p)
        )
        k = rng.randrange(-6, 7)
        expected = perms.identity(n)
        for _ in range(abs(k)):
            expected = perms.compose(expected, p if k > 0 else perms.inverse(p))
        assert perms.power(p, k) == expected


def test_commutator_examples():
    ident = perms.identity(4)
    assert perms.commutator(ident, ident) == ident
    # commuting pair -> identity
    a = perms.from_cycles(4, [(0, 1)])
    b = perms.from_cycles(4, [(2, 3)])
    assert perms.commutator(a, b) == ident
    # h=(0 1 2), v=(1 2) on 3 squares gives a 3-cycle
    h = perms.from_cycles(3, [(0, 1, 2)])
    v = perms.from_cycles(3, [(1, 2)])
    assert perms.cycle_type(perms.commutator(h, v)) == (3,)


def test_cycles_and_type():
    p = perms.from_cycles(6, [(0, 2), (1, 5, 3)])
    assert perms.cycles(p) == [(0, 2), (1, 5, 3)]
    assert perms.cycle_type(p) == (3, 2, 1)
    assert perms.cycle_string(p) == "(0,2)(1,5,3)"
    assert perms.cycle_string(perms.identity(3)) == "()"


def test_from_cycles_validation():
    with pytest.raises(ValueError):
        perms.from_cycles(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        perms.from_cycles(3, [(0, 5)])


def test_class_representative():
    rep = perms.class_representative(5, (3, 2))
    assert perms.cycle_type(rep) == (3, 2)
    with pytest.raises(ValueError):
        perms.class_representative(5, (3, 3))


def test_conjugate_preserves_type():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randrange(2, 9)
        p = perms.random_perm(n, rng)
        s = perms.random_perm(n, rng)
        assert perms.cycle_type(perms.conjugate(p, s)) == perms.cycle_type(p)

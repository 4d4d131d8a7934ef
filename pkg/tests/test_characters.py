import math
from functools import lru_cache

from stcensus.characters import (
    character,
    character_table_column,
    class_size,
    conjugate,
    dim_irrep,
    hook_product,
)
from stcensus.strata import partitions_of


def test_conjugate_partition():
    assert conjugate((4, 2, 1)) == (3, 2, 1, 1)
    assert conjugate(()) == ()
    assert conjugate(conjugate((5, 3, 3, 1))) == (5, 3, 3, 1)


def test_class_sizes_sum_to_group_order():
    for n in range(1, 9):
        assert sum(class_size(n, t) for t in partitions_of(n)) == math.factorial(n)
    assert class_size(3, (3,)) == 2
    assert class_size(3, (2, 1)) == 3
    assert class_size(4, (2, 2)) == 3


@lru_cache(maxsize=None)
def count_syt(lam):
    """Standard Young tableaux by corner-removal recursion (independent of hooks)."""
    if not lam:
        return 1
    total = 0
    for i in range(len(lam)):
        if i == len(lam) - 1 or lam[i] > lam[i + 1]:
            new = lam[:i] + (lam[i] - 1,) + lam[i + 1 :]
            total += count_syt(tuple(x for x in new if x))
    return total


def test_dimension_equals_syt_count():
    for n in range(1, 8):
        for lam in partitions_of(n):
            assert dim_irrep(lam) == count_syt(lam), lam
            assert math.factorial(n) == dim_irrep(lam) * hook_product(lam)


def test_dimension_sum_of_squares():
    for n in range(1, 10):
        assert sum(dim_irrep(l) ** 2 for l in partitions_of(n)) == math.factorial(n)


def test_known_s3_s4_values():
    # classical tables, checkable by hand
    assert character((3,), (2, 1)) == 1
    assert character((1, 1, 1), (2, 1)) == -1
    assert character((2, 1), (1, 1, 1)) == 2
    assert character((2, 1), (2, 1)) == 0
    assert character((2, 1), (3,)) == -1
    assert character((2, 2), (2, 2)) == 2
    assert character((2, 2), (4,)) == 0
    assert character((3, 1), (2, 1, 1)) == 1
    assert character((3, 1), (4,)) == -1


def test_orthogonality_rows():
    for n in range(2, 8):
        classes = partitions_of(n)
        cols = {c: character_table_column(n, c) for c in classes}
        lams = partitions_of(n)
        for i, l1 in enumerate(lams):
            for l2 in lams[i:]:
                s = sum(class_size(n, c) * cols[c][l1] * cols[c][l2] for c in classes)
                assert s == (math.factorial(n) if l1 == l2 else 0)


def test_orthogonality_columns():
    for n in range(2, 8):
        classes = partitions_of(n)
        lams = partitions_of(n)
        for c1 in classes:
            for c2 in classes:
                s = sum(character(l, c1) * character(l, c2) for l in lams)
                want = math.factorial(n) // class_size(n, c1) if c1 == c2 else 0
                assert s == want


def test_sign_character():
    # chi_(1^n)(c) is the sign of the class
    for n in range(2, 8):
        for c in partitions_of(n):
            sign = (-1) ** (n - len(c))
            assert character((1,) * n, c) == sign

from fractions import Fraction
from math import factorial

import pytest

from kappa_lab.exceptions import UsageError
from kappa_lab.partitions import Partition, partition_count, partitions


def test_partitions_of_four_in_reverse_lex_order():
    assert [p.parts for p in partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_partitions_of_zero_is_the_empty_partition():
    assert [p.parts for p in partitions(0)] == [()]


@pytest.mark.parametrize("n", range(0, 26))
def test_count_matches_pentagonal_recurrence(n):
    seen = [p.parts for p in partitions(n)]
    assert len(seen) == partition_count(n)
    assert len(set(seen)) == len(seen)
    assert seen == sorted(seen, reverse=True)


def test_partition_count_sixty():
    # independent oracle: the pentagonal recurrence
    assert partition_count(60) == 966467


@pytest.mark.slow
def test_enumerates_all_partitions_of_sixty():
    assert sum(1 for _ in partitions(60)) == 966467


def test_centralizer_orders():
    assert Partition((3, 1)).centralizer_order == 3
    assert Partition((2, 2)).centralizer_order == 8
    assert Partition((1, 1, 1, 1)).centralizer_order == 24
    assert Partition(()).centralizer_order == 1


@pytest.mark.parametrize("n", range(0, 21))
def test_class_probabilities_sum_to_one(n):
    assert sum(Fraction(1, p.centralizer_order) for p in partitions(n)) == 1


@pytest.mark.parametrize("n", range(2, 31))
def test_even_permutations_are_half(n):
    assert sum(p.class_size for p in partitions(n) if p.is_even) == factorial(n) // 2


def test_sign_matches_parts_count():
    for n in range(1, 16, 2):
        for p in partitions(n):
            assert p.sign == (-1) ** (n - len(p))


def test_split_types():
    assert Partition((5, 3, 1)).is_split
    assert not Partition((3, 3)).is_split
    assert not Partition((2,)).is_split
    assert Partition(()).is_split


def test_from_parts_sorts():
    assert Partition.from_parts([1, 3, 2]).parts == (3, 2, 1)


@pytest.mark.parametrize("bad", [(1, 2), (0,), (-1,)])
def test_invalid_parts_rejected(bad):
    with pytest.raises(UsageError):
        Partition(bad)


def test_negative_n_rejected():
    with pytest.raises(UsageError):
        list(partitions(-1))

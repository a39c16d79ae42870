from fractions import Fraction

import pytest

from kappa_lab.brute import alternating_classes, brute_force_table
from kappa_lab.exceptions import UsageError


def test_s4_and_a4():
    t = brute_force_table(4)
    assert t["kappa_sym"].values[4] == Fraction(73, 288)
    assert t["kappa_alt"].values[4] == Fraction(7, 24)


def test_a4_class_sizes():
    assert sorted(len(c) for c in alternating_classes(4)) == [1, 3, 4, 4]


@pytest.mark.parametrize("n, count", [(3, 3), (4, 4), (5, 5), (6, 7), (7, 9)])
def test_alternating_class_counts(n, count):
    assert len(alternating_classes(n)) == count


def test_one_point():
    t = brute_force_table(1)
    for q, table in t.items():
        # no permutation has all cycles shorter than 1
        assert table.values[1] == (0 if q in ("kappa_odd", "s_below(1)") else 1), q


def test_refuses_large_n():
    with pytest.raises(UsageError):
        brute_force_table(9)

from fractions import Fraction
from functools import reduce
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappa_lab.exceptions import UsageError
from kappa_lab.series import (
    PowerSeries,
    coefficient,
    series_exp,
    series_mul,
    series_product_sparse,
)


def test_difference_of_squares():
    a = PowerSeries([1, 1], order=2)
    b = PowerSeries([1, -1], order=2)
    assert series_mul(a, b) == PowerSeries([1, 0, -1])


def test_multiplicative_identity():
    a = PowerSeries([Fraction(1, 3), 0, 5, Fraction(-2, 7)])
    assert series_mul(a, PowerSeries.one(3)) == a


def test_square_of_exponential():
    e = PowerSeries([Fraction(1, factorial(k)) for k in range(5)])
    # (e^x)^2 = e^{2x}; coefficient of x^4 is 2^4 / 4!
    assert coefficient(series_mul(e, e), 4) == Fraction(2**4, factorial(4)) == Fraction(2, 3)


def test_mismatched_orders_rejected():
    with pytest.raises(UsageError):
        series_mul(PowerSeries([1, 1]), PowerSeries([1, 1, 1]))


def test_sparse_product_hand_expansion():
    got = series_product_sparse([(1, 1), (3, Fraction(1, 9))], 4)
    assert got == PowerSeries([1, 1, 0, Fraction(1, 9), Fraction(1, 9)])


def test_sparse_product_empty():
    assert series_product_sparse([], 5) == PowerSeries.one(5)


def test_sparse_product_odd_factors_x4():
    f = series_product_sparse([(d, Fraction(1, d * d)) for d in range(1, 16, 2)], 15)
    # only 4 = 3 + 1 uses distinct odd parts
    assert coefficient(f, 4) == Fraction(1, 9)
    assert coefficient(f, 0) == 1


def test_sparse_product_skips_high_degrees():
    assert series_product_sparse([(7, 3)], 4) == PowerSeries.one(4)


def test_sparse_product_rejects_nonpositive_degree():
    with pytest.raises(UsageError):
        series_product_sparse([(0, 1)], 3)


def test_exp_of_zero():
    assert series_exp(PowerSeries.zero(6)) == PowerSeries.one(6)


def test_exp_of_x():
    got = series_exp(PowerSeries([0, 1], order=3))
    assert got == PowerSeries([1, 1, Fraction(1, 2), Fraction(1, 6)])


def test_exp_of_log_series_is_geometric():
    order = 40
    f = PowerSeries([0] + [Fraction(1, d) for d in range(1, order + 1)])
    g = series_exp(f)
    assert all(coefficient(g, n) == 1 for n in range(order + 1))


def test_exp_rejects_constant_term():
    with pytest.raises(UsageError):
        series_exp(PowerSeries([1, 1]))


def test_coefficient_lookup_and_bounds():
    f = PowerSeries([1, 2])
    assert coefficient(f, 1) == 2
    assert f[0] == 1
    with pytest.raises(UsageError):
        coefficient(f, 2)


def test_constructor_pads_and_truncates():
    assert PowerSeries([1], order=2).coefficients == (1, 0, 0)
    assert PowerSeries([1, 2, 0, 0], order=1) == PowerSeries([1, 2])
    with pytest.raises(UsageError):
        PowerSeries([1, 2, 3], order=1)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


@st.composite
def series_triples(draw, zero_constant=False):
    order = draw(st.integers(min_value=0, max_value=16))

    def one():
        coeffs = draw(st.lists(rationals, min_size=order + 1, max_size=order + 1))
        if zero_constant:
            coeffs[0] = Fraction(0)
        return PowerSeries(coeffs, order=order)

    return one(), one(), one()


@settings(max_examples=60, deadline=None)
@given(series_triples())
def test_ring_laws(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(series_triples(zero_constant=True))
def test_exp_turns_sums_into_products(abc):
    f, g, _ = abc
    assert series_exp(f + g) == series_exp(f) * series_exp(g)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=16),
    st.lists(st.tuples(st.integers(min_value=1, max_value=20), rationals), max_size=8),
)
def test_sparse_product_matches_fold(order, factors):
    folded = reduce(
        series_mul,
        (PowerSeries.one(order) + PowerSeries.monomial(d, w, order) for d, w in factors),
        PowerSeries.one(order),
    )
    assert series_product_sparse(factors, order) == folded

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lapcycles.series import PowerSeries, log_one_minus_x

ORDER = 12
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def series(const=None):
    head = st.just(Fraction(const)) if const is not None else fractions
    return st.builds(lambda c0, rest: PowerSeries([c0] + rest, ORDER), head, st.lists(fractions, max_size=ORDER - 1))


def test_geometric_series():
    x = PowerSeries.x(8)
    assert (1 / (1 - x)).coefficients == [Fraction(1)] * 8


def test_exp_of_x_is_reciprocal_factorials():
    import math

    e = PowerSeries.x(10).exp()
    assert e.coefficients == [Fraction(1, math.factorial(k)) for k in range(10)]


def test_exp_log_one_minus_x_roundtrip():
    assert log_one_minus_x(ORDER).exp() == 1 - PowerSeries.x(ORDER)


def test_egf_coefficient_is_nth_derivative():
    # d^3/dx^3 of 1/(1-x) at 0 is 3! = 6
    assert (1 / (1 - PowerSeries.x(6))).egf_coefficient(3) == 6


@settings(max_examples=60, deadline=None)
@given(series().filter(lambda s: s[0] != 0))
def test_inverse_times_self_is_one(f):
    assert f * f.inverse() == PowerSeries.constant(1, ORDER)


@settings(max_examples=40, deadline=None)
@given(series(const=0), series(const=0))
def test_exp_is_a_homomorphism(f, g):
    assert (f + g).exp() == f.exp() * g.exp()


@settings(max_examples=40, deadline=None)
@given(series(const=0))
def test_log_inverts_exp(f):
    assert f.exp().log() == f


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_multiplication_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c


def test_power_matches_repeated_product():
    f = PowerSeries([1, 2, Fraction(1, 3)], 9)
    assert f**4 == f * f * f * f
    assert f**-1 == f.inverse()


def test_invalid_operations():
    with pytest.raises(ZeroDivisionError):
        PowerSeries.x(4).inverse()
    with pytest.raises(ValueError):
        PowerSeries([1, 1], 4).exp()
    with pytest.raises(ValueError):
        PowerSeries([2, 1], 4).log()
    with pytest.raises(TypeError):
        PowerSeries.x(3) + 1.5

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gwh.series import (
    LaurentSeries,
    MultiSeries,
    QSeries,
    SeriesError,
    exp_log_transform,
    series_invert,
    series_mul,
)
from gwh.shifted import S_series, sigma_series, inverse_sigma_series

ORDER = 6
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def laurent(low=0):
    return st.lists(fractions, min_size=ORDER - low, max_size=ORDER - low).map(
        lambda cs: LaurentSeries(cs, low, ORDER)
    )


def bivariate(const=None):
    keys = [(i, j) for i in range(4) for j in range(4) if i + j < 4]

    def build(cs):
        terms = dict(zip(keys, cs))
        if const is not None:
            terms[(0, 0)] = const
        return MultiSeries(2, terms, 4)

    return st.lists(fractions, min_size=len(keys), max_size=len(keys)).map(build)


def test_monomial_times_inverse():
    z = LaurentSeries([1], 1, 5)
    zinv = LaurentSeries([1], -1, 5)
    assert series_mul(z, zinv) == LaurentSeries.one(4)


def test_sigma_times_inverse():
    prod = series_mul(sigma_series(9), inverse_sigma_series(9))
    assert prod.valuation() == 0
    assert all(prod[e] == (1 if e == 0 else 0) for e in range(prod.order))


def test_S_squared_z4():
    sq = S_series(5) ** 2
    assert sq[2] == Fraction(1, 12)
    assert sq[4] == 2 * Fraction(1, 1920) + Fraction(1, 576)


def test_invert_S_constants():
    c = series_invert(S_series(6))
    assert [c[i] for i in range(5)] == [1, 0, Fraction(-1, 24), 0, Fraction(7, 5760)]


def test_invert_one_and_zero_leading():
    assert series_invert(LaurentSeries.one(4)) == LaurentSeries.one(4)
    with pytest.raises(SeriesError, match="not invertible"):
        series_invert(LaurentSeries([0, 0, 0], 0, 3))
    # a leading zero only shifts the valuation
    assert series_invert(LaurentSeries([0, 1], 0, 4)).valuation() == -1


def test_exp_of_zero_and_linear():
    zero = MultiSeries.zero(1, 3)
    assert exp_log_transform(zero, "exp") == MultiSeries.constant(1, 1, 3)
    a = Fraction(3, 2)
    e = exp_log_transform(MultiSeries(1, {(1,): a}, 3), "exp")
    assert e == MultiSeries(1, {(0,): 1, (1,): a, (2,): a * a / 2}, 3)


def test_exp_log_wrong_constant():
    with pytest.raises(SeriesError):
        exp_log_transform(MultiSeries.constant(1, 1, 3), "exp")
    with pytest.raises(SeriesError):
        exp_log_transform(MultiSeries.constant(1, 2, 3), "log")


@settings(max_examples=25, deadline=None)
@given(laurent(), laurent(-1), laurent())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=25, deadline=None)
@given(bivariate(), bivariate(), bivariate())
def test_multiseries_ring_axioms(a, b, c):
    assert ((a * b) * c).agrees_with(a * (b * c))
    assert (a * (b + c)).agrees_with(a * b + a * c)


@settings(max_examples=25, deadline=None)
@given(laurent())
def test_invert_twice(a):
    if a[0] == 0:
        return
    assert series_invert(series_invert(a)) == a


@settings(max_examples=20, deadline=None)
@given(bivariate(const=Fraction(0)))
def test_log_exp_round_trip(f):
    assert exp_log_transform(exp_log_transform(f, "exp"), "log").agrees_with(f)


@settings(max_examples=20, deadline=None)
@given(bivariate(const=Fraction(1)))
def test_exp_log_round_trip(f):
    assert exp_log_transform(exp_log_transform(f, "log"), "exp").agrees_with(f)


def test_qseries_inverse():
    s = QSeries([1, -1, -1, 0, 0, 1], 5)
    assert s * s.inverse() == QSeries([1], 5)


def test_multiseries_truncation_is_respected():
    x = MultiSeries.variable(2, 0, 3)
    y = MultiSeries.variable(2, 1, 3)
    one = MultiSeries.constant(2, 1, 3)
    p = (one + x + y) ** 3
    assert p.order == 3
    assert all(sum(e) < 3 for e in p.terms)
    assert p.coefficient((1, 1)) == 6
    assert (x * y).coefficient((1, 1)) == 1

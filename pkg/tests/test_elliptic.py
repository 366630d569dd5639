from fractions import Fraction

import pytest

from gwh.elliptic import (
    NotQuasimodular,
    QuasimodularFit,
    eisenstein,
    elliptic_npoint_trace,
    elliptic_series,
    euler_function,
    quasimodularity_fit,
    stationary_quasimodular_series,
    theta_determinant_npoint,
    theta_series,
    weight_monomials,
)
from gwh.gw import degeneration_check, stationary_disconnected
from gwh.fock import trace_qH
from gwh.series import QSeries
from gwh.shifted import sigma_series


def test_euler_and_eisenstein():
    assert euler_function(7) == QSeries([1, -1, -1, 0, 0, 1, 0, 1])
    assert eisenstein(2, 3) == QSeries([Fraction(-1, 24), 1, 3, 4])
    assert eisenstein(4, 2) == QSeries([Fraction(1, 240), 1, 9])
    assert eisenstein(6, 1) == QSeries([Fraction(-1, 504), 1])


def test_weight_monomials():
    assert weight_monomials(2) == [(1, 0, 0)]
    assert weight_monomials(6) == [(3, 0, 0), (1, 1, 0), (0, 0, 1)]
    assert len(weight_monomials(10)) == 5
    assert weight_monomials(3) == []


def test_zero_point_is_partition_count():
    counts = trace_qH([], 10, 1)
    inv = euler_function(10).inverse()
    assert QSeries([counts[d] for d in range(11)]) == inv


def test_tau0_low_coefficients():
    s = elliptic_series([0], 3)
    assert s[0] == Fraction(-1, 24)
    assert s[1] == Fraction(23, 24)


def test_theta_odd_and_q0_limit():
    theta = theta_series(9, 4)
    assert theta.eighths == 1
    sigma = sigma_series(9)
    for m in range(9):
        if m % 2 == 0:
            assert not theta.series[m]
        assert theta.series[m][0] == sigma[m]


@pytest.mark.parametrize("n,z_order,q_order", [(1, 7, 5), (2, 7, 5), (2, 5, 3)])
def test_trace_equals_theta(n, z_order, q_order):
    trace = elliptic_npoint_trace(n, z_order, q_order)
    theta = theta_determinant_npoint(n, z_order, q_order)
    assert trace.agrees_with(theta)


def test_trace_coefficients_match_degeneration():
    trace = elliptic_npoint_trace(1, 4, 3)
    series = trace.coefficient((3,))
    for d in range(4):
        assert series[d] == stationary_disconnected(1, d, [2])
    assert degeneration_check(1, 2, [2])


def test_tau0_is_E2():
    fit = quasimodularity_fit(stationary_quasimodular_series([0], 8), 2)
    assert fit == {(1, 0, 0): Fraction(1)}


def test_tau1_tau1_weight_six():
    fit = quasimodularity_fit(stationary_quasimodular_series([1, 1], 10), 6)
    assert fit == {(3, 0, 0): Fraction(-8, 3), (1, 1, 0): Fraction(2, 3), (0, 0, 1): Fraction(7, 180)}


def test_zero_series_fits_to_zero():
    assert quasimodularity_fit(QSeries([0], 8), 4) == {}


def test_wrong_weight_rejected():
    with pytest.raises(NotQuasimodular):
        quasimodularity_fit(stationary_quasimodular_series([0], 8), 4)


def test_too_few_coefficients():
    with pytest.raises(NotQuasimodular, match="need at least"):
        QuasimodularFit(10, 3).fit(stationary_quasimodular_series([0, 4], 5))


def test_fit_predicts_beyond_window():
    series = stationary_quasimodular_series([2], 12)
    fit = QuasimodularFit(4, 3).fit(stationary_quasimodular_series([2], 8))
    assert fit.predict(12) == series

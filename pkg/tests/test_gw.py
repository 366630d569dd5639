from fractions import Fraction
from math import factorial

import pytest

from gwh.gw import (
    connected_absolute,
    connected_absolute_table,
    connected_from_disconnected,
    connected_relative,
    connected_relative_npoint,
    degeneration_check,
    disconnected_npoint,
    domain_genus,
    elliptic_degeneration_check,
    gwh_substitution,
    MissingData,
    n_point_closed_form,
    one_point_closed_form,
    one_point_relative,
    relative_p1_disconnected,
    stationary_disconnected,
    toda_recurrence_check,
    wwq_check,
)
from gwh.partitions import Partition, enumerate_partitions, partitions_up_to
from gwh.shifted import S_series, inverse_S_series, regularized_constant


def P(*parts):
    return Partition(parts)


def test_stationary_examples():
    assert stationary_disconnected(0, 0, [2]) == Fraction(7, 5760)
    assert stationary_disconnected(1, 1, [0]) == Fraction(23, 24)
    assert stationary_disconnected(0, 2, [1, 1]) == Fraction(1, 2)


def test_unit_and_vanishing_conventions():
    for d in range(4):
        assert stationary_disconnected(0, d, [-2, 1, 1]) == stationary_disconnected(0, d, [1, 1])
        assert stationary_disconnected(0, d, [-1, 2]) == 0


@pytest.mark.parametrize("d", range(2, 6))
def test_cyclic_cover_bracket(d):
    assert one_point_relative(P(d), [d - 1]) == Fraction(1, factorial(d))


def test_relative_zero_point_and_size_mismatch():
    for mu in partitions_up_to(4):
        for nu in partitions_up_to(4):
            if mu.size != nu.size:
                assert relative_p1_disconnected(mu, nu, [1]) == 0
    assert relative_p1_disconnected(P(2), P(2)) == Fraction(1, 2)


def test_substitution_examples():
    assert gwh_substitution(0, 2, [1, 1]) == Fraction(1, 2)
    assert gwh_substitution(0, 1, [2]) == stationary_disconnected(0, 1, [2])
    for ks in ([0], [2, 4], [0, 0, 2]):
        expected = Fraction(1)
        for k in ks:
            expected *= regularized_constant(k + 2)
        assert gwh_substitution(0, 0, ks) == expected


@pytest.mark.parametrize("g", [0, 1, 2])
def test_trivial_profile_specialization(g):
    for d in range(4):
        for ks in ([1], [0, 2], [3]):
            assert gwh_substitution(g, d, ks, [[1] * d]) == stationary_disconnected(g, d, ks)


def test_dimension_constraint_zero():
    for g in (0, 1):
        for d in range(4):
            for ks in ([0], [1], [0, 1], [2, 3]):
                if domain_genus(g, d, ks) is None:
                    assert stationary_disconnected(g, d, ks) == 0
                    assert gwh_substitution(g, d, ks) == 0


def test_domain_genus():
    assert domain_genus(0, 2, [1, 1]) == 0
    assert domain_genus(1, 1, [0]) == 1
    assert domain_genus(0, 2, [1]) is None


def test_degree_zero_connected():
    order = 12
    table = connected_absolute_table(0, 0, 2, order)
    one = table[(0, (0,))]
    inv = inverse_S_series(order)
    for g in range(6):
        assert one.coefficient((2 * g - 1,)) == inv[2 * g]
    assert not table[(0, (0, 1))].terms


def test_connected_absolute_examples():
    assert connected_absolute(0, 1, [0, 0]) == 1
    assert connected_absolute(0, 0, [2]) == Fraction(7, 5760)


def test_missing_data():
    with pytest.raises(MissingData):
        connected_from_disconnected({}, P(1), P(1), 1, 3)


@pytest.mark.parametrize("mu", partitions_up_to(4))
def test_wwq(mu):
    for k in range(0, 5):
        assert wwq_check(mu, k)


def test_one_point_identity_profiles():
    for d in range(1, 5):
        ones = P(*([1] * d))
        expected = S_series(8) ** (2 * d - 1) * Fraction(1, factorial(d) ** 2)
        assert one_point_closed_form(ones, ones, 8) == expected


def test_one_point_cycle_value_at_zero():
    for d in range(1, 5):
        assert one_point_closed_form(P(d), P(d), 4)[0] == 1


def test_crossing_symmetry():
    # {2,2,1,1,1,1} split as (2,2)|(1^4) and as (2,1,1)|(2,1,1)
    a = connected_relative_npoint(P(2, 2), P(1, 1, 1, 1), 1, 8)
    b = connected_relative_npoint(P(2, 1, 1), P(2, 1, 1), 1, 8)
    ka = P(2, 2).aut_order() * P(1, 1, 1, 1).aut_order()
    kb = P(2, 1, 1).aut_order() ** 2
    assert (a * ka).agrees_with(b * kb)
    assert (one_point_closed_form(P(2, 2), P(1, 1, 1, 1), 6) * ka
            == one_point_closed_form(P(2, 1, 1), P(2, 1, 1), 6) * kb)


def test_npoint_reduces_to_one_point():
    for mu, nu in ((P(2), P(1, 1)), (P(3), P(2, 1)), (P(1), P(1))):
        closed = n_point_closed_form(mu, nu, 1, 8)
        shift = mu.length + nu.length - 1
        one = one_point_closed_form(mu, nu, 8 - shift)
        assert all(closed.coefficient((e + shift,)) == one[e] for e in range(8 - shift))


def test_npoint_empty_profiles_degree_zero():
    closed = n_point_closed_form(P(), P(), 1, 8)
    char = connected_relative_npoint(P(), P(), 1, 8)
    assert closed.agrees_with(char)
    assert not n_point_closed_form(P(), P(), 2, 6).terms


def test_three_pipelines_agree():
    for d in range(4):
        for mu in enumerate_partitions(d):
            for nu in enumerate_partitions(d):
                for n in (1, 2):
                    char = connected_relative_npoint(mu, nu, n, 6)
                    oper = connected_relative_npoint(mu, nu, n, 6, "operator")
                    closed = n_point_closed_form(mu, nu, n, 6)
                    assert char.agrees_with(oper)
                    assert char.agrees_with(closed)


def test_connected_relative_scalar():
    value = connected_relative(P(2), P(2), [1])
    assert value == connected_relative(P(2), P(2), [1], "operator")
    assert value == n_point_closed_form(P(2), P(2), 1, 3).coefficient((2,))


@pytest.mark.parametrize("mu,nu,n", [((), (), 1), ((1,), (1,), 1), ((1,), (1,), 2), ((2,), (1, 1), 2)])
def test_toda(mu, nu, n):
    assert toda_recurrence_check(mu, nu, n, 6)


def test_degeneration_examples():
    assert degeneration_check(1, 2, [2])
    assert degeneration_check(0, 2, [1, 1])
    assert degeneration_check(0, 0, [])
    assert elliptic_degeneration_check(2, [2])


def test_unknown_pipeline():
    with pytest.raises(ValueError):
        disconnected_npoint(P(1), P(1), 1, 3, "magic")

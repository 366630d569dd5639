from fractions import Fraction

import pytest

from gwh.completion import completed_cycle
from gwh.gw import hurwitz_degeneration_check
from gwh.hurwitz import (
    OracleTooLarge,
    hurwitz_character_sum,
    hurwitz_linear,
    hurwitz_number,
    hurwitz_oracle,
    riemann_hurwitz_genus,
)
from gwh.partitions import Partition, enumerate_partitions


def P(*parts):
    return Partition(parts)


def test_empty_degree_zero():
    assert hurwitz_number(0, 0, [P(), P()]) == 1


def test_transposition_pair():
    assert hurwitz_number(0, 2, [P(2), P(2)]) == Fraction(1, 2)
    assert hurwitz_oracle(0, 2, [P(2), P(2)]) == Fraction(1, 2)


def test_padding_rule():
    assert hurwitz_number(0, 2, [P(1), P(1)]) == 2


def test_genus_one_degree_one():
    assert hurwitz_number(1, 1, []) == 1
    assert hurwitz_oracle(1, 1, []) == 1


def test_three_cycles():
    assert hurwitz_oracle(0, 3, [P(3), P(3)]) == Fraction(1, 3)
    assert hurwitz_number(0, 3, [P(3), P(3)]) == Fraction(1, 3)


@pytest.mark.parametrize("d", range(2, 6))
def test_single_cycle_profile(d):
    assert hurwitz_oracle(0, d, [P(d)]) == 0
    assert hurwitz_number(0, d, [P(d)]) == 0


def test_oracle_ceiling():
    with pytest.raises(OracleTooLarge, match="oracle too large"):
        hurwitz_oracle(0, 7, [])
    with pytest.raises(OracleTooLarge):
        hurwitz_oracle(1, 5, [])


def test_riemann_hurwitz():
    assert riemann_hurwitz_genus(2, 0, [P(2), P(2)]) == 0
    assert riemann_hurwitz_genus(1, 1, []) == 1
    assert riemann_hurwitz_genus(2, 0, [P(2), P(2), P(2)]) is None


def test_linear_extension_matches_basis():
    assert hurwitz_linear(0, 2, [completed_cycle(2), completed_cycle(2)]) == Fraction(1, 2)


def test_character_sum_is_strict():
    for d in range(1, 5):
        for eta in enumerate_partitions(d):
            assert hurwitz_character_sum(0, d, [eta, eta]) == hurwitz_number(0, d, [eta, eta])


def test_sum_rule_matches_zero_point_relative():
    # sum over eta of H(eta, eta) weighted by z(eta) counts one cover per class
    from gwh.gw import relative_p1_disconnected
    from gwh.partitions import z_factor

    for d in range(5):
        for eta in enumerate_partitions(d):
            assert hurwitz_number(0, d, [eta, eta]) == relative_p1_disconnected(eta, eta)
            assert hurwitz_number(0, d, [eta, eta]) * z_factor(eta) == 1


@pytest.mark.parametrize("d", range(5))
def test_hurwitz_degeneration(d):
    for ks in [(1,), (2,), (3,), (1, 2), (3, 3), (2, 4)]:
        for g in (0, 1):
            assert hurwitz_degeneration_check(g, d, ks)

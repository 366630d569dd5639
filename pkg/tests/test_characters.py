from fractions import Fraction
from math import prod

import pytest

from gwh.characters import (
    ClassAlgebraElement,
    central_character,
    character,
    character_table,
    dimension,
    hook_length_dimension,
)
from gwh.completion import _solve
from gwh.partitions import Partition, enumerate_partitions, partitions_up_to, z_factor
from gwh.shifted import p_k


def P(*parts):
    return Partition(parts)


def test_small_characters():
    for eta in enumerate_partitions(4):
        assert character(P(4), eta) == 1
    assert character(P(1, 1), P(2)) == -1
    assert character(P(2, 1), P(1, 1, 1)) == 2


def test_dimensions():
    assert dimension(P(5)) == 1
    assert dimension(P(1, 1, 1, 1, 1)) == 1
    assert dimension(P(2, 1)) == 2
    assert sum(dimension(lam) ** 2 for lam in enumerate_partitions(5)) == 120


@pytest.mark.parametrize("d", range(1, 9))
def test_hook_length_agrees(d):
    for lam in enumerate_partitions(d):
        assert dimension(lam) == hook_length_dimension(lam)


@pytest.mark.parametrize("d", range(8))
def test_column_orthogonality(d):
    table = character_table(d)
    parts = enumerate_partitions(d)
    for mu in parts:
        for nu in parts:
            s = sum(table[lam][mu] * table[lam][nu] for lam in parts)
            assert s == (z_factor(mu) if mu == nu else 0)


def test_central_character_examples():
    for lam in partitions_up_to(5):
        assert central_character(P(), lam) == 1
        assert central_character(P(1), lam) == lam.size
    assert central_character(P(2), P(2)) == 1
    assert central_character(P(2), P(1, 1)) == -1


def test_central_character_vanishes_on_small_lambda():
    for mu in partitions_up_to(4):
        if mu:
            assert central_character(mu, P()) == 0
    assert central_character(P(3), P(2)) == 0


def _p_mu(mu, lam):
    return prod((p_k(m, lam) for m in mu), start=Fraction(1))


_LAMS = partitions_up_to(8)


def _residual_in_lower_span(mu, scale) -> bool:
    """Is ``f_mu - p_mu / scale`` spanned by ``p_nu``, ``|nu| < |mu|``, on ``|lam| <= 8``?"""
    lower = partitions_up_to(mu.size - 1)
    columns = [[_p_mu(nu, lam) for lam in _LAMS] for nu in lower]
    target = [central_character(mu, lam) - _p_mu(mu, lam) / scale for lam in _LAMS]
    gram = [[sum(a * b for a, b in zip(ci, cj)) for cj in columns] for ci in columns]
    rhs = [sum(a * b for a, b in zip(ci, target)) for ci in columns]
    x = _solve(gram, rhs)
    fitted = [sum(xi * col[j] for xi, col in zip(x, columns)) for j in range(len(_LAMS))]
    return fitted == target


@pytest.mark.parametrize("size", range(1, 6))
def test_vershik_kerov_leading_term(size):
    # the leading coefficient is 1/z(mu); it equals 1/prod(mu) for distinct parts
    for mu in enumerate_partitions(size):
        assert _residual_in_lower_span(mu, z_factor(mu))
        if mu.aut_order() == 1:
            assert _residual_in_lower_span(mu, prod(mu))


def test_leading_term_needs_automorphism_factor():
    for mu in (P(1, 1), P(2, 2), P(2, 1, 1)):
        assert not _residual_in_lower_span(mu, prod(mu))


def test_class_algebra_arithmetic():
    a = ClassAlgebraElement({(2,): 1, (): Fraction(-1, 24)})
    b = ClassAlgebraElement.basis([2])
    assert a - b == ClassAlgebraElement({(): Fraction(-1, 24)})
    assert (a * 2)[(2,)] == 2
    assert ClassAlgebraElement({(1,): 0}) == ClassAlgebraElement()
    assert a.degrees() == {0, 2}
    assert a.to_json() == [{"class": [2], "coefficient": "1"}, {"class": [], "coefficient": "-1/24"}]

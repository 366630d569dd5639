import random
from fractions import Fraction

import pytest

from gwh.elliptic import euler_function
from gwh.fock import (
    CutoffExceeded,
    FockVector,
    WedgeOperator,
    adjoint_check,
    apply_alpha,
    apply_E,
    apply_P,
    commutator_check,
    connected_vacuum_expectation,
    g_function,
    trace_qH,
    vacuum_expectation,
)
from gwh.gw import disconnected_npoint
from gwh.partitions import Partition, enumerate_partitions, partitions_up_to, z_factor
from gwh.shifted import e_series, inverse_sigma_series, p_k, sigma_series

A = WedgeOperator.alpha
E = WedgeOperator.E


def P(*parts):
    return Partition(parts)


def test_alpha_on_vacuum():
    vac = FockVector.vacuum()
    assert apply_alpha(-1, vac) == FockVector.basis([1])
    assert apply_alpha(-2, vac) == FockVector({(2,): 1, (1, 1): -1})
    assert apply_alpha(3, vac) == FockVector()


def test_alpha_is_E_at_zero():
    for lam in partitions_up_to(4):
        v = FockVector.basis(lam)
        for r in range(-3, 4):
            if r == 0:
                continue
            image = apply_E(r, v, 3)
            at_zero = FockVector({mu: c.coefficient((0,)) for mu, c in image.items()})
            assert at_zero == apply_alpha(r, v)


def test_E0_on_vacuum():
    order = 8
    out = apply_E(0, FockVector.vacuum(), order)[()]
    inv = inverse_sigma_series(order + 1)
    assert all(out.coefficient((e,)) == inv[e] for e in range(-1, order))


def test_P_eigenvalues():
    for lam in partitions_up_to(6):
        v = FockVector.basis(lam)
        for k in range(1, 7):
            assert apply_P(k, v) == v.scale(p_k(k, lam))


@pytest.mark.parametrize("seed", range(6))
def test_adjointness(seed):
    rng = random.Random(seed)
    lams = partitions_up_to(4)

    def vec():
        return FockVector({rng.choice(lams): Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)})

    u, w = vec(), vec()
    for r in range(-3, 4):
        assert adjoint_check(r, u, w, 5)


def test_simple_vacuum_expectations():
    for k in range(1, 5):
        assert vacuum_expectation([A(k), A(-k)], 1) == k
    one = vacuum_expectation([E(0)], 6)
    inv = inverse_sigma_series(7)
    assert all(one.coefficient((e,)) == inv[e] for e in range(-1, 6))


@pytest.mark.parametrize("d", range(5))
def test_zero_point_relative(d):
    for mu in enumerate_partitions(d):
        for nu in enumerate_partitions(d):
            value = disconnected_npoint(mu, nu, 0, 1, "operator").coefficient(())
            assert value == (Fraction(1, z_factor(mu)) if mu == nu else 0)


def test_cutoff_enforced():
    with pytest.raises(CutoffExceeded):
        FockVector.basis([3], cutoff=2)
    with pytest.raises(CutoffExceeded):
        apply_alpha(-2, FockVector.vacuum(cutoff=1))


@pytest.mark.parametrize("a,b", [(1, -1), (2, 3), (-2, 2), (0, 1), (3, -3)])
def test_commutator(a, b):
    assert commutator_check(a, b, 6, 6)


def test_commutator_specializes_to_alpha():
    # [alpha_a, alpha_b] = a delta_{a+b}
    for a in range(-3, 4):
        for b in range(-3, 4):
            if a and b:
                lhs = vacuum_expectation([A(a), A(b)], 1) - vacuum_expectation([A(b), A(a)], 1)
                assert lhs == (a if a + b == 0 else 0)


def test_g_function_one_and_two_points():
    order = 6
    g0 = g_function([0], order)
    inv = inverse_sigma_series(order + 1)
    assert all(g0.coefficient((e,)) == inv[e] for e in range(-1, order))
    for a in (1, 2, 3):
        g = g_function([a, -a], order)
        ratio = (sigma_series(order + 2).scale_variable(a) * inverse_sigma_series(order + 1))
        assert g.agrees_with(ratio.substitute_linear((1, 1), order))
        assert not g_function([-a, a], order).terms


def test_g_three_point_matches_connected_expectation():
    order = 5
    assert g_function([1, 1, -2], order).agrees_with(connected_vacuum_expectation([1, 1, -2], order))
    assert g_function([2, -1, -1], order).agrees_with(connected_vacuum_expectation([2, -1, -1], order))


def test_trace_without_operators():
    counts = trace_qH([], 10, 1)
    inv = euler_function(10).inverse()
    assert [counts[d] for d in range(11)] == [inv[d] for d in range(11)]


def test_trace_with_one_E0():
    tr = trace_qH([E(0)], 1, 6)
    for d, lam in ((0, P()), (1, P(1))):
        e = e_series(lam, 6)
        assert all(tr[d].coefficient((x,)) == e[x] for x in range(-1, 6))


def test_trace_rejects_off_diagonal():
    with pytest.raises(ValueError, match="diagonal"):
        trace_qH([A(1)], 2, 2)


def test_energy_bound_for_relative_products():
    # prod alpha_{mu} prod E_0 prod alpha_{-nu} v_0 stays within energy |nu|
    for nu in partitions_up_to(4):
        v = FockVector.vacuum(cutoff=nu.size)
        for part in nu:
            v = apply_alpha(-part, v)
        v = apply_E(0, v, 4)
        assert all(lam.size <= nu.size for lam in v)

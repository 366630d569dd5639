"""Stationary Gromov-Witten invariants of target curves.

Absolute invariants of a genus-``g`` target and invariants of the projective
line relative to two points are computed by several independent routes:

* character sums over representations (``pipeline="character"``);
* vacuum expectations in the infinite wedge (``pipeline="operator"``);
* closed formulas: the one-point series and the ``G``-function n-point formula;
* the descendent-to-completed-cycle substitution fed into Hurwitz numbers.

Generating functions follow one convention throughout: the coefficient of
``prod z_i^(k_i+1)`` in an n-point series is the invariant with insertions
``tau_{k_i}``.  ``tau_{-2}`` is the unit and ``tau_{-1}`` insertions vanish.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import factorial
from typing import Mapping, Sequence

from .characters import ClassAlgebraElement, character, dimension
from .completion import completed_cycle, completion_coefficient, descendent_class
from .fock import WedgeOperator, g_function, set_partitions, vacuum_expectation
from .hurwitz import hurwitz_linear, hurwitz_number
from .partitions import Partition, enumerate_partitions, sub_multisets, z_factor
from .series import LaurentSeries, MultiSeries
from .shifted import S_series, e_series, p_k, sigma_series

__all__ = [
    "descendent_factor",
    "domain_genus",
    "stationary_disconnected",
    "relative_p1_disconnected",
    "one_point_relative",
    "disconnected_npoint",
    "absolute_npoint",
    "MissingData",
    "connected_from_disconnected",
    "connected_relative_table",
    "connected_relative_npoint",
    "connected_absolute_table",
    "connected_absolute_npoint",
    "connected_relative",
    "connected_absolute",
    "one_point_closed_form",
    "one_point_connected_series",
    "n_point_closed_form",
    "toda_rhs",
    "toda_recurrence_check",
    "degeneration_check",
    "elliptic_degeneration_check",
    "hurwitz_degeneration_check",
    "gwh_substitution",
    "wwq_check",
    "coefficient_identification_check",
    "extract_coefficient",
]

PIPELINES = ("character", "operator", "closed", "substitution")


def descendent_factor(k: int, lam) -> Fraction:
    """``p_{k+1}(lam) / (k+1)!`` with the unit convention at ``k = -2``."""
    if k < -2:
        raise ValueError("descendent indices start at -2")
    if k == -2:
        return Fraction(1)
    if k == -1:
        return Fraction(0)
    return p_k(k + 1, lam) / factorial(k + 1)


def domain_genus(
    g_target: int, d: int, ks: Sequence[int], profiles: Sequence = ()
) -> int | None:
    """Genus forced by the dimension constraint, or ``None`` if it is not an integer.

    ``2g - 2 + d(2 - 2g_X) - sum_j (d - l(eta^j)) = sum_i k_i``.  The genus of a
    disconnected domain may be negative.
    """
    rhs = sum(ks) - d * (2 - 2 * g_target) + 2
    for eta in profiles:
        eta = Partition(eta)
        rhs += d - eta.length
    if rhs % 2:
        return None
    return rhs // 2


# -- disconnected invariants --------------------------------------------------


@lru_cache(maxsize=None)
def _stationary(g_target: int, d: int, ks: tuple[int, ...]) -> Fraction:
    total = Fraction(0)
    for lam in enumerate_partitions(d):
        term = Fraction(dimension(lam), factorial(d)) ** (2 - 2 * g_target)
        for k in ks:
            term *= descendent_factor(k, lam)
            if not term:
                break
        total += term
    return total


def stationary_disconnected(g_target: int, d: int, ks: Sequence[int]) -> Fraction:
    """``<prod tau_{k_i}>^X_d`` (disconnected) for a genus-``g_target`` target."""
    if g_target < 0 or d < 0:
        raise ValueError("genus and degree must be non-negative")
    return _stationary(g_target, d, tuple(sorted(ks)))


@lru_cache(maxsize=None)
def _relative(mu: Partition, nu: Partition, ks: tuple[int, ...]) -> Fraction:
    total = Fraction(0)
    for lam in enumerate_partitions(mu.size):
        term = Fraction(character(lam, mu) * character(lam, nu))
        for k in ks:
            term *= descendent_factor(k, lam)
            if not term:
                break
        total += term
    return total / (z_factor(mu) * z_factor(nu))


def relative_p1_disconnected(mu, nu, ks: Sequence[int] = ()) -> Fraction:
    """``<mu, prod tau_{k_i}, nu>`` on the projective line relative to two points."""
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != nu.size:
        return Fraction(0)
    return _relative(mu, nu, tuple(sorted(ks)))


def one_point_relative(mu, ks: Sequence[int] = ()) -> Fraction:
    """Relative to one point: the second profile is unramified, ``nu = (1^d)``."""
    mu = Partition(mu)
    return relative_p1_disconnected(mu, [1] * mu.size, ks)


def _product_series(factors: Sequence[LaurentSeries], order: int) -> MultiSeries:
    """``prod_i f_i(z_i)`` for factors with at most simple poles."""
    n = len(factors)
    if n == 0:
        return MultiSeries.constant(0, 1, order)
    result = factors[0].to_multi(n, 0)
    for i, f in enumerate(factors[1:], start=1):
        result = result * f.to_multi(n, i)
    return result.truncate(min(order, result.order))


@lru_cache(maxsize=None)
def _eigen_product(lam: Partition, n: int, order: int) -> MultiSeries:
    e = e_series(lam, order + n - 1)
    return _product_series([e] * n, order)


def disconnected_npoint(mu, nu, n: int, order: int, pipeline: str = "character") -> MultiSeries:
    """``F^bullet_{mu,nu}(z_1..z_n)`` through total degree ``order - 1``."""
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != nu.size:
        return MultiSeries.zero(n, order)
    scale = Fraction(1, z_factor(mu) * z_factor(nu))
    if pipeline == "character":
        total = MultiSeries.zero(n, order)
        for lam in enumerate_partitions(mu.size):
            c = character(lam, mu) * character(lam, nu)
            if c:
                total = total + _eigen_product(lam, n, order) * c
        return total * scale
    if pipeline == "operator":
        ops = [WedgeOperator.alpha(m) for m in mu]
        ops += [WedgeOperator.E(0, i, n) for i in range(n)]
        ops += [WedgeOperator.alpha(-m) for m in nu]
        value = vacuum_expectation(ops, order, n)
        if not isinstance(value, MultiSeries):
            value = MultiSeries.constant(n, value, order)
        return value * scale
    raise ValueError(f"unknown pipeline {pipeline!r}")


def absolute_npoint(g_target: int, d: int, n: int, order: int) -> MultiSeries:
    """``sum_lam (dim lam/d!)^(2-2g) prod e(lam, z_i)``: the degree-``d`` n-point series."""
    total = MultiSeries.zero(n, order)
    for lam in enumerate_partitions(d):
        w = Fraction(dimension(lam), factorial(d)) ** (2 - 2 * g_target)
        total = total + _eigen_product(lam, n, order) * w
    return total


def extract_coefficient(series: MultiSeries, ks: Sequence[int]) -> Fraction:
    """The invariant ``[prod z_i^(k_i+1)]`` of an n-point series."""
    return series.coefficient(tuple(k + 1 for k in ks))


# -- connected invariants -----------------------------------------------------


class MissingData(KeyError):
    pass


def _restrict(series: MultiSeries, positions: Sequence[int]) -> MultiSeries:
    """Keep the variables in ``positions`` (others must not occur)."""
    m = len(positions)
    terms = {}
    for e, c in series.terms.items():
        terms[tuple(e[p] for p in positions)] = c
    return MultiSeries(m, terms, series.order)


def _log_by_grading(
    keys: list, weight, split, value: Mapping, one_key
) -> dict:
    """Logarithm of ``Z = sum_K value[K] x^K`` in a graded monoid algebra.

    Uses ``w(K) C_K = w(K) Z_K - sum_{J < K} w(J) C_J Z_{K-J}``, where ``split``
    lists pairs ``(J, K - J)`` with both parts nonzero.
    """
    connected = {}
    for key in sorted(keys, key=weight):
        if key == one_key:
            continue
        acc = value[key]
        w = weight(key)
        for j, rest in split(key):
            cj = connected.get(j)
            zr = value.get(rest)
            if cj is None or zr is None or not cj.terms or not zr.terms:
                continue
            acc = acc - cj * zr * Fraction(weight(j), w)
        connected[key] = acc
    return connected


def _submask_pairs(mask: int):
    sub = mask
    while True:
        yield sub, mask & ~sub
        if sub == 0:
            break
        sub = (sub - 1) & mask


def _mask_positions(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def connected_from_disconnected(
    data: Mapping, mu, nu, n: int, order: int
) -> dict:
    """Connected relative series from disconnected ones by a formal logarithm.

    ``data[(mu', nu', S)]`` must hold ``F^bullet_{mu',nu'}(z_S)`` (a series in
    ``len(S)`` variables, ``S`` an increasing tuple of indices) for every
    sub-multiset pair of equal size and every subset ``S`` of ``range(n)``.
    Missing entries raise :class:`MissingData`.  The result maps the same keys
    to ``F^circ_{mu',nu'}(z_S)`` known below total degree ``order``.

    Conventions: the empty key carries the constant 1 and ``<>^circ = 0``.
    """
    mu, nu = Partition(mu), Partition(nu)
    subs_mu, subs_nu = sub_multisets(mu), sub_multisets(nu)
    big = order + n
    value = {}
    keys = []
    for a in subs_mu:
        for b in subs_nu:
            if a.size != b.size:
                continue
            for mask in range(1 << n):
                pos = _mask_positions(mask, n)
                key = (a, b, tuple(pos))
                if key not in data:
                    raise MissingData(f"no disconnected series for {key}")
                f = data[key]
                if not isinstance(f, MultiSeries):
                    f = MultiSeries.constant(len(pos), f, order)
                shifted = f.shift([1] * len(pos)).embed(n, pos)
                value[(a, b, mask)] = shifted.truncate(min(big, shifted.order))
                keys.append((a, b, mask))
    one_key = (Partition(), Partition(), 0)
    if not value[one_key].agrees_with(MultiSeries.constant(n, 1, value[one_key].order)):
        raise ValueError("the empty disconnected invariant must be 1")

    def weight(key):
        return key[0].length + key[1].length + bin(key[2]).count("1")

    sub_cache: dict = {}

    def split(key):
        a, b, mask = key
        if (a, b) not in sub_cache:
            pairs = []
            for a1 in sub_multisets(a):
                a2 = _difference(a, a1)
                for b1 in sub_multisets(b):
                    if a1.size != b1.size:
                        continue
                    pairs.append((a1, a2, b1, _difference(b, b1)))
            sub_cache[(a, b)] = pairs
        for a1, a2, b1, b2 in sub_cache[(a, b)]:
            for m1, m2 in _submask_pairs(mask):
                j, rest = (a1, b1, m1), (a2, b2, m2)
                if weight(j) and weight(rest):
                    yield j, rest

    connected = _log_by_grading(keys, weight, split, value, one_key)
    out = {}
    for (a, b, mask), c in connected.items():
        pos = _mask_positions(mask, n)
        unshifted = _restrict(c, pos).shift([-1] * len(pos))
        out[(a, b, tuple(pos))] = unshifted.truncate(min(order, unshifted.order))
    return out


def _difference(a: Partition, b: Partition) -> Partition:
    parts = list(a)
    for x in b:
        parts.remove(x)
    return Partition(parts)


def _relative_data(mu, nu, n: int, order: int, pipeline: str) -> dict:
    data = {}
    for a in sub_multisets(Partition(mu)):
        for b in sub_multisets(Partition(nu)):
            if a.size != b.size:
                continue
            for m in range(n + 1):
                series = disconnected_npoint(a, b, m, order + n - m, pipeline)
                for pos in combinations(range(n), m):
                    data[(a, b, pos)] = series
    return data


def connected_relative_table(mu, nu, n: int, order: int, pipeline: str = "character") -> dict:
    """All ``F^circ_{mu',nu'}(z_S)`` for sub-multisets and subsets, below ``order``."""
    data = _relative_data(mu, nu, n, order, pipeline)
    return connected_from_disconnected(data, mu, nu, n, order)


def connected_relative_npoint(mu, nu, n: int, order: int, pipeline: str = "character") -> MultiSeries:
    """``F^circ_{mu,nu}(z_1..z_n)`` through total degree ``order - 1``."""
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != nu.size:
        return MultiSeries.zero(n, order)
    table = connected_relative_table(mu, nu, n, order, pipeline)
    return table[(mu, nu, tuple(range(n)))]


def connected_absolute_table(g_target: int, d: int, n: int, order: int) -> dict:
    """Connected absolute series ``{(d', S): F^circ_{d'}(z_S)}`` for ``d' <= d``."""
    big = order + n
    value, keys = {}, []
    for dd in range(d + 1):
        for m in range(n + 1):
            series = absolute_npoint(g_target, dd, m, order + n - m)
            for pos in combinations(range(n), m):
                mask = sum(1 << p for p in pos)
                shifted = series.shift([1] * m).embed(n, pos)
                value[(dd, mask)] = shifted.truncate(min(big, shifted.order))
                keys.append((dd, mask))

    def weight(key):
        return key[0] + bin(key[1]).count("1")

    def split(key):
        dd, mask = key
        for d1 in range(dd + 1):
            for m1, m2 in _submask_pairs(mask):
                j, rest = (d1, m1), (dd - d1, m2)
                if weight(j) and weight(rest):
                    yield j, rest

    connected = _log_by_grading(keys, weight, split, value, (0, 0))
    out = {}
    for (dd, mask), c in connected.items():
        pos = _mask_positions(mask, n)
        unshifted = _restrict(c, pos).shift([-1] * len(pos))
        out[(dd, tuple(pos))] = unshifted.truncate(min(order, unshifted.order))
    return out


def connected_absolute_npoint(g_target: int, d: int, n: int, order: int) -> MultiSeries:
    return connected_absolute_table(g_target, d, n, order)[(d, tuple(range(n)))]


def _order_for(ks: Sequence[int]) -> int:
    return sum(k + 1 for k in ks) + 1


def connected_relative(mu, nu, ks: Sequence[int], pipeline: str = "character") -> Fraction:
    """``<mu, prod tau_{k_i}, nu>^circ``."""
    series = connected_relative_npoint(mu, nu, len(ks), _order_for(ks), pipeline)
    return extract_coefficient(series, ks)


def connected_absolute(g_target: int, d: int, ks: Sequence[int]) -> Fraction:
    """``<prod tau_{k_i}>^circ_d`` of a genus-``g_target`` target."""
    series = connected_absolute_npoint(g_target, d, len(ks), _order_for(ks))
    return extract_coefficient(series, ks)


# -- closed forms -------------------------------------------------------------


def one_point_closed_form(mu, nu, order: int) -> LaurentSeries:
    """``prod S(mu_i z) prod S(nu_i z) / (|Aut mu| |Aut nu| S(z))`` below ``z^order``.

    The coefficient of ``z^(2g)`` is the connected invariant with insertion
    ``tau_{2g-2+l(mu)+l(nu)}``.
    """
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != nu.size:
        raise ValueError(f"size mismatch: |{mu}| != |{nu}|")
    if order <= 0:
        return LaurentSeries([], order)
    series = LaurentSeries.one(order)
    for part in tuple(mu) + tuple(nu):
        series = series * S_series(order).scale_variable(part)
    series = series * (S_series(order) ** -1)
    return series * Fraction(1, mu.aut_order() * nu.aut_order())


def one_point_connected_series(mu, nu, order: int) -> LaurentSeries:
    """``F^circ_{mu,nu}(z) = prod sigma(mu_i z) prod sigma(nu_i z) / (z(mu) z(nu) sigma(z))``."""
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != nu.size:
        raise ValueError(f"size mismatch: |{mu}| != |{nu}|")
    shift = mu.length + nu.length - 1
    closed = one_point_closed_form(mu, nu, max(order - shift, 0))
    return closed.shift(shift)


def n_point_closed_form(mu, nu, n: int, order: int) -> MultiSeries:
    """``F^circ_{mu,nu}(z_1..z_n)`` from the sum over maps ``f: M -> {1..n}``.

    ``M`` is the multiset ``{mu_i} u {-nu_i}``; each element ``m`` contributes
    ``sigma(|m| z_{f(m)})`` and the row sums feed ``G``.
    """
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != nu.size:
        return MultiSeries.zero(n, order)
    if n < 1:
        raise ValueError("the closed form needs at least one point")
    M = list(mu) + [-x for x in nu]
    # sigma factors have valuation 1 and G for n = 1 has a simple pole
    inner = order + 1
    sig = sigma_series(inner + 1)
    g_cache: dict = {}
    total = MultiSeries.zero(n, inner)
    for f in product(range(n), repeat=len(M)):
        a = [0] * n
        for m, i in zip(M, f):
            a[i] += m
        a = tuple(a)
        if a not in g_cache:
            g_cache[a] = g_function(a, inner + len(M))
        g = g_cache[a]
        if not g.terms:
            continue
        term = g
        for m, i in zip(M, f):
            term = term * sig.scale_variable(abs(m)).to_multi(n, i)
        total = total + term.truncate(min(inner, term.order))
    total = total * Fraction(1, z_factor(mu) * z_factor(nu))
    return total.truncate(order)


# -- Toda ---------------------------------------------------------------------


def _splittings(parts: Partition, k: int) -> list[tuple[Partition, ...]]:
    """Ordered ``k``-tuples of multisets whose union is ``parts``."""
    if k == 1:
        return [(parts,)]
    out = []
    for first in sub_multisets(parts):
        for rest in _splittings(_difference(parts, first), k - 1):
            out.append((first,) + rest)
    return out


def toda_rhs(mu, nu, n: int, order: int, table: Mapping) -> MultiSeries:
    """Right side of the Toda recurrence for ``F^circ_{mu+1, nu+1}(z_1..z_n)``.

    ``table`` holds connected series ``F^circ_{mu',nu'}(z_S)`` as produced by
    :func:`connected_relative_table`.
    """
    mu, nu = Partition(mu), Partition(nu)
    if n < 1:
        return MultiSeries.zero(n, order)
    inner = order + n
    total = MultiSeries.zero(n, inner)
    for blocks in set_partitions(list(range(n))):
        k = len(blocks)
        blocks = [tuple(sorted(b)) for b in blocks]
        sig2 = []
        for b in blocks:
            form = [int(i in b) for i in range(n)]
            s = sigma_series(inner + 2).substitute_linear(form, inner + 2)
            sig2.append(s * s)
        for mus in _splittings(mu, k):
            for nus in _splittings(nu, k):
                if any(a.size != b.size for a, b in zip(mus, nus)):
                    continue
                term = MultiSeries.constant(n, 1, inner + 2)
                for b, a_i, b_i, s2 in zip(blocks, mus, nus, sig2):
                    f = table.get((a_i, b_i, b))
                    if f is None:
                        raise MissingData(f"no connected series for {(a_i, b_i, b)}")
                    term = term * s2 * f.embed(n, b)
                total = total + term
    scale = Fraction(1, (mu.multiplicity(1) + 1) * (nu.multiplicity(1) + 1))
    total = total * scale
    return total.truncate(min(order, total.order))


def toda_recurrence_check(mu, nu, n: int, order: int) -> bool:
    """Compare ``F^circ_{mu+1,nu+1}`` from the closed formula with the Toda sum.

    The right side uses connected series from the character pipeline.
    """
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != nu.size:
        raise ValueError("mu and nu must have the same size")
    lhs = n_point_closed_form(mu.union([1]), nu.union([1]), n, order)
    table = connected_relative_table(mu, nu, n, order + n)
    rhs = toda_rhs(mu, nu, n, order, table)
    return lhs.agrees_with(rhs, order)


# -- degeneration and substitution -------------------------------------------


def degeneration_check(g_target: int, d: int, ks: Sequence[int]) -> bool:
    """Absolute invariants versus Hurwitz numbers glued to one-point relative ones."""
    lhs = stationary_disconnected(g_target, d, ks)
    parts = enumerate_partitions(d)
    rhs = Fraction(0)
    for mus in product(parts, repeat=len(ks)):
        weight = Fraction(1)
        for m, k in zip(mus, ks):
            weight *= z_factor(m) * one_point_relative(m, [k])
            if not weight:
                break
        if weight:
            rhs += hurwitz_number(g_target, d, mus) * weight
    return lhs == rhs


def elliptic_degeneration_check(d: int, ks: Sequence[int]) -> bool:
    """``<prod tau>^E_d = sum_mu z(mu) <mu, prod tau, mu>`` on the projective line."""
    lhs = stationary_disconnected(1, d, ks)
    rhs = sum(
        (z_factor(m) * relative_p1_disconnected(m, m, ks) for m in enumerate_partitions(d)),
        Fraction(0),
    )
    return lhs == rhs


def hurwitz_degeneration_check(g_target: int, d: int, ks: Sequence[int]) -> bool:
    """Hurwitz numbers with completed cycles factored through intermediate profiles."""
    cycles = [completed_cycle(k) for k in ks]
    lhs = hurwitz_linear(g_target, d, cycles)
    parts = enumerate_partitions(d)
    rhs = Fraction(0)
    for mus in product(parts, repeat=len(ks)):
        weight = Fraction(1)
        for m, c in zip(mus, cycles):
            weight *= z_factor(m) * hurwitz_linear(0, d, [ClassAlgebraElement.basis(m), c])
            if not weight:
                break
        if weight:
            rhs += hurwitz_number(g_target, d, mus) * weight
    return lhs == rhs


def _insertion_class(k: int) -> ClassAlgebraElement:
    if k == -2:
        return ClassAlgebraElement.basis(())
    if k == -1:
        return ClassAlgebraElement()
    return descendent_class(k)


def gwh_substitution(
    g_target: int, d: int, ks: Sequence[int], profiles: Sequence = ()
) -> Fraction:
    """Replace each ``tau_k`` by ``(k+1)-bar / k!`` and sum extended Hurwitz numbers.

    ``profiles`` are extra ramification conditions (relative points).  With
    ``g_target = 0`` and two profiles this is the relative invariant
    ``<mu, prod tau, nu>``.
    """
    insertions = [_insertion_class(k) for k in ks]
    insertions += [ClassAlgebraElement.basis(p) for p in profiles]
    return hurwitz_linear(g_target, d, insertions)


def wwq_check(mu, k: int) -> bool:
    """``<mu, tau_k>^bullet = sum_i <mu - 1^i, tau_k>^circ / i!`` (one relative point)."""
    mu = Partition(mu)
    lhs = one_point_relative(mu, [k])
    order = k + 2
    table = connected_relative_table(mu, [1] * mu.size, 1, order)
    rhs = Fraction(0)
    for i in range(mu.multiplicity(1) + 1):
        rest = mu.remove_ones(i)
        series = table[(rest, Partition([1] * rest.size), (0,))]
        rhs += extract_coefficient(series, [k]) / factorial(i)
    return lhs == rhs


def coefficient_identification_check(k: int, mu) -> bool:
    """``rho_{k+1,mu} / k! = z(mu) <mu, tau_k>^circ`` with the closed one-point series."""
    mu = Partition(mu)
    lhs = completion_coefficient(k + 1, mu) / factorial(k)
    series = one_point_connected_series(mu, [1] * mu.size, k + 2)
    return lhs == z_factor(mu) * series[k + 1]

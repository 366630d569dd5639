"""Completed cycles, completion coefficients and the Fourier transform ``phi``.

``phi`` sends the class ``(mu)`` to the central character ``f_mu``, a function
on partitions of every size.  The completed cycle is the class-algebra element
mapped to ``p_k / k``.  It can be reached two ways: the closed coefficient
formula (:func:`completion_coefficient`) or exact inversion of ``phi`` on a
finite window of partitions (:func:`fourier_invert`).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable

from .characters import ClassAlgebraElement, central_character
from .partitions import Partition, enumerate_partitions
from .shifted import S_series, p_k, regularized_constant

__all__ = [
    "completion_coefficient",
    "completed_cycle",
    "completed_cycle_by_inversion",
    "descendent_class",
    "fourier_eval",
    "fourier_invert",
    "NotInSpan",
]


class NotInSpan(ValueError):
    pass


def completion_coefficient(k: int, mu) -> Fraction:
    """``rho_{k,mu}``, the coefficient of ``(mu)`` in the completed ``k``-cycle.

    ``rho_{k,mu} = (k-1)! prod(mu)/|mu|! [z^(k+1-|mu|-l(mu))] S(z)^(|mu|-1) prod S(mu_i z)``
    and ``rho_{k,()} = (k-1)! c_{k+1}``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    mu = Partition(mu)
    if not mu:
        return factorial(k - 1) * regularized_constant(k + 1)
    e = k + 1 - mu.size - mu.length
    if e < 0 or e % 2:
        return Fraction(0)
    order = e + 1
    series = S_series(order) ** (mu.size - 1)
    for part in mu:
        series = series * S_series(order).scale_variable(part)
    return factorial(k - 1) * Fraction(prod(mu), factorial(mu.size)) * series[e]


@lru_cache(maxsize=None)
def _completed_cycle(k: int) -> ClassAlgebraElement:
    terms = {Partition(): completion_coefficient(k, ())}
    for size in range(1, k + 1):
        for mu in enumerate_partitions(size):
            if mu.size + mu.length <= k + 1:
                terms[mu] = completion_coefficient(k, mu)
    return ClassAlgebraElement(terms)


def completed_cycle(k: int) -> ClassAlgebraElement:
    """The completed cycle ``(k)-bar = sum_mu rho_{k,mu} (mu)``."""
    if k < 1:
        raise ValueError("k must be positive")
    return _completed_cycle(k)


def descendent_class(k: int) -> ClassAlgebraElement:
    """The class ``(k+1)-bar / k!`` that replaces the descendent ``tau_k``."""
    if k < 0:
        raise ValueError("only k >= 0 has a class-algebra substitute")
    return completed_cycle(k + 1) * Fraction(1, factorial(k))


def fourier_eval(c: ClassAlgebraElement, lam) -> Fraction:
    """``phi(c)(lam) = sum_mu c_mu f_mu(lam)``."""
    lam = Partition(lam)
    return sum((coef * central_character(mu, lam) for mu, coef in c.items()), Fraction(0))


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Exact Gauss-Jordan elimination; raises on a zero pivot."""
    n = len(matrix)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise NotInSpan("singular block: phi is not injective on this window")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def fourier_invert(
    values: Callable[[Partition], object], D: int, check_extra: int = 2
) -> ClassAlgebraElement:
    """Find ``c`` with ``phi(c) = values`` using the classes ``|mu| <= D``.

    ``f_mu(lam)`` vanishes for ``|mu| > |lam|``, so the system over all
    ``|lam| <= D`` is block lower triangular by size and each diagonal block is
    a rescaled character table.  The answer is then checked on the partitions
    of the next ``check_extra`` sizes.
    """
    if D < 0:
        raise ValueError("D must be non-negative")
    solution: dict[Partition, Fraction] = {}
    for d in range(D + 1):
        lams = enumerate_partitions(d)
        rhs = []
        for lam in lams:
            known = sum(
                (c * central_character(mu, lam) for mu, c in solution.items()), Fraction(0)
            )
            rhs.append(Fraction(values(lam)) - known)
        block = [[central_character(mu, lam) for mu in lams] for lam in lams]
        for mu, x in zip(lams, _solve(block, rhs)):
            solution[mu] = x
    result = ClassAlgebraElement(solution)
    for d in range(D + 1, D + 1 + check_extra):
        for lam in enumerate_partitions(d):
            if fourier_eval(result, lam) != Fraction(values(lam)):
                raise NotInSpan(f"not in span up to degree {D}: residual at {lam}")
    return result


def completed_cycle_by_inversion(k: int) -> ClassAlgebraElement:
    """The completed cycle recomputed as ``phi^-1(p_k / k)``."""
    if k < 1:
        raise ValueError("k must be positive")
    return fourier_invert(lambda lam: p_k(k, lam) / k, k)


"""Shifted symmetric power sums and their generating function.

``p_k(lam) = sum_i [(lam_i - i + 1/2)^k - (-i + 1/2)^k] + k! c_{k+1}``, where
``1/S(z) = sum_i c_i z^i`` and ``S(z) = sinh(z/2)/(z/2)``.  The constants
``c_i`` are read off the inverted series, so the regularized zeta values
``(1 - 2^-k) zeta(-k) = k! c_{k+1}`` never need a separate table.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .partitions import Partition
from .series import LaurentSeries, series_invert

__all__ = [
    "S_series",
    "sigma_series",
    "inverse_S_series",
    "inverse_sigma_series",
    "sigma_and_S",
    "regularized_constant",
    "regularized_constants",
    "zeta_negative",
    "p_k",
    "p_mu",
    "e_series",
    "PMinusOne",
    "P_MINUS_ONE",
]

_HALF = Fraction(1, 2)


def S_series(order: int) -> LaurentSeries:
    """``S(z) = sum_k z^(2k) / (2^(2k) (2k+1)!)`` through ``z^(order-1)``."""
    cs = [Fraction(0)] * max(order, 0)
    for k in range(0, (order + 1) // 2):
        cs[2 * k] = Fraction(1, 4**k * factorial(2 * k + 1))
    return LaurentSeries(cs, 0)


def sigma_series(order: int) -> LaurentSeries:
    """``sigma(z) = e^(z/2) - e^(-z/2) = z S(z)`` through ``z^(order-1)``."""
    return S_series(order - 1).shift(1)


def sigma_and_S(order: int) -> tuple[LaurentSeries, LaurentSeries]:
    if order < 1:
        raise ValueError("order must be at least 1")
    return sigma_series(order), S_series(order)


@lru_cache(maxsize=None)
def _inverse_S(order: int) -> LaurentSeries:
    return series_invert(S_series(order))


def inverse_S_series(order: int) -> LaurentSeries:
    """``1/S(z) = sum c_i z^i`` through ``z^(order-1)``."""
    return _inverse_S(max(order, 1)).truncate(order)


def inverse_sigma_series(order: int) -> LaurentSeries:
    """``1/sigma(z)``: a simple pole, known below ``z^order``."""
    return inverse_S_series(order + 1).shift(-1)


def regularized_constant(i: int) -> Fraction:
    """``c_i``, the coefficient of ``z^i`` in ``1/S(z)``."""
    if i < 0:
        return Fraction(0)
    return _inverse_S(i + 1)[i]


def regularized_constants(order: int) -> list[Fraction]:
    return [regularized_constant(i) for i in range(order)]


def zeta_negative(k: int) -> Fraction:
    """``zeta(-k)`` for ``k >= 1`` from ``(1 - 2^-k) zeta(-k) = k! c_{k+1}``."""
    if k < 1:
        raise ValueError("k must be positive")
    return factorial(k) * regularized_constant(k + 1) / (1 - Fraction(1, 2**k))


class PMinusOne:
    """Placeholder for ``p_{-1}``: only ``p_{-1} / (-1)! = 1`` is meaningful.

    It is deliberately not a number; arithmetic on it raises ``TypeError``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "P_MINUS_ONE"


P_MINUS_ONE = PMinusOne()


def _strip(lam) -> Partition:
    # trailing zero parts contribute nothing; accept them for convenience
    if isinstance(lam, Partition):
        return lam
    return Partition([x for x in lam if x != 0])


def p_k(k: int, lam) -> Fraction | PMinusOne:
    """Shifted symmetric power sum ``p_k(lam)``.

    ``p_0 = 0``; ``p_{-1}`` returns :data:`P_MINUS_ONE`.  Zero parts of
    ``lam`` are ignored.
    """
    if k < -1:
        raise ValueError("p_k is defined for k >= -1")
    if k == -1:
        return P_MINUS_ONE
    if k == 0:
        return Fraction(0)
    lam = _strip(lam)
    total = factorial(k) * regularized_constant(k + 1)
    for i, part in enumerate(lam, start=1):
        total += (part - i + _HALF) ** k - (-i + _HALF) ** k
    return total


def p_mu(mu, lam) -> Fraction:
    """``p_mu = prod_i p_{mu_i}`` evaluated at ``lam``."""
    out = Fraction(1)
    for m in Partition(mu):
        out *= p_k(m, lam)
    return out


@lru_cache(maxsize=4096)
def _e_series(lam: tuple[int, ...], order: int) -> LaurentSeries:
    total = inverse_sigma_series(order)
    for i, part in enumerate(lam, start=1):
        if part:
            total = total + LaurentSeries.exp_linear(part - i + _HALF, order)
            total = total - LaurentSeries.exp_linear(-i + _HALF, order)
    return total


def e_series(lam, order: int) -> LaurentSeries:
    """``e(lam, z) = sum_i e^{z(lam_i - i + 1/2)}``, regularized.

    Computed as ``sum_{i <= l(lam)} [e^{z(lam_i-i+1/2)} - e^{z(-i+1/2)}] + 1/sigma(z)``
    and known below ``z^order``.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    return _e_series(tuple(_strip(lam)), order)

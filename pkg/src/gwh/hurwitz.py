"""Disconnected Hurwitz numbers of genus-``g`` targets.

Two independent routes:

* :func:`hurwitz_number` -- the Burnside character sum, with profiles of any
  size handled by padding with fixed points (binomial weights);
* :func:`hurwitz_oracle` -- a direct count of permutation tuples whose product
  (times a commutator, for an elliptic target) is the identity.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterable, Sequence

from .characters import ClassAlgebraElement, central_character, dimension
from .partitions import OversizedProfile, Partition, enumerate_partitions, pad_to_degree

__all__ = [
    "hurwitz_number",
    "hurwitz_character_sum",
    "hurwitz_linear",
    "hurwitz_oracle",
    "riemann_hurwitz_genus",
    "OracleTooLarge",
    "ORACLE_CEILING",
]

ORACLE_CEILING = {0: 6, 1: 4}


class OracleTooLarge(ValueError):
    pass


def _key(profiles: Iterable[Iterable[int]]) -> tuple[Partition, ...]:
    return tuple(sorted((Partition(p) for p in profiles), key=lambda p: (len(p), p)))


@lru_cache(maxsize=None)
def _character_sum(g: int, d: int, profiles: tuple[Partition, ...]) -> Fraction:
    total = Fraction(0)
    df = factorial(d)
    for lam in enumerate_partitions(d):
        term = Fraction(dimension(lam), df) ** (2 - 2 * g)
        for eta in profiles:
            if not term:
                break
            term *= central_character(eta, lam)
        total += term
    return total


def hurwitz_character_sum(g: int, d: int, profiles: Sequence[Iterable[int]]) -> Fraction:
    """``sum_lam (dim lam / d!)^(2-2g) prod_i f_{eta^i}(lam)`` over ``|lam| = d``.

    With every ``|eta^i| = d`` this is the classical Frobenius/Burnside formula.
    """
    if g < 0 or d < 0:
        raise ValueError("genus and degree must be non-negative")
    return _character_sum(g, d, _key(profiles))


def hurwitz_number(g: int, d: int, profiles: Sequence[Iterable[int]] = ()) -> Fraction:
    """Extended disconnected Hurwitz number ``H^X_d(eta^1, ..., eta^n)``.

    Profiles smaller than ``d`` are padded with parts 1 and weighted by
    ``binom(m_1(padded), m_1(eta))``; any profile larger than ``d`` gives 0.
    """
    profiles = [Partition(p) for p in profiles]
    if d == 0 and all(not p for p in profiles):
        return Fraction(1)
    padded, weight = [], 1
    for eta in profiles:
        try:
            full, w = pad_to_degree(eta, d)
        except OversizedProfile:
            return Fraction(0)
        padded.append(full)
        weight *= w
    return weight * hurwitz_character_sum(g, d, padded)


def hurwitz_linear(g: int, d: int, insertions: Sequence) -> Fraction:
    """Hurwitz number extended multilinearly over class-algebra elements.

    Each insertion is a :class:`ClassAlgebraElement` or a plain partition.
    """
    expanded = []
    for ins in insertions:
        if isinstance(ins, ClassAlgebraElement):
            expanded.append(list(ins.items()))
        else:
            expanded.append([(Partition(ins), Fraction(1))])
    total = Fraction(0)
    for combo in product(*expanded):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        total += coeff * hurwitz_number(g, d, [mu for mu, _ in combo])
    return total


def riemann_hurwitz_genus(d: int, g_target: int, profiles: Sequence[Iterable[int]]) -> int | None:
    """Domain genus forced by Riemann-Hurwitz, or ``None`` when ``2g(C)`` is odd.

    Profiles must already have size ``d``.  The genus may be negative for
    disconnected covers.
    """
    profiles = [Partition(p) for p in profiles]
    for eta in profiles:
        if eta.size != d:
            raise ValueError(f"profile {eta} is not padded to degree {d}")
    two_g = sum(d - eta.length for eta in profiles) - d * (2 - 2 * g_target) + 2
    if two_g % 2:
        return None
    return two_g // 2


# -- permutation oracle ----------------------------------------------------


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """``(p q)(i) = p(q(i))``."""
    return tuple(p[i] for i in q)


def _cycle_type(p: tuple[int, ...]) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            lengths.append(n)
    return Partition(lengths)


def _inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


@lru_cache(maxsize=None)
def _classes(d: int) -> dict[Partition, tuple[tuple[int, ...], ...]]:
    out: dict[Partition, list] = {}
    for p in permutations(range(d)):
        out.setdefault(_cycle_type(p), []).append(p)
    return {k: tuple(v) for k, v in out.items()}


@lru_cache(maxsize=None)
def _commutator_counts(d: int) -> dict[tuple[int, ...], int]:
    group = [p for cls in _classes(d).values() for p in cls]
    counts: Counter = Counter()
    for a in group:
        ai = _inverse(a)
        for b in group:
            counts[_compose(_compose(a, b), _compose(ai, _inverse(b)))] += 1
    return dict(counts)


def hurwitz_oracle(
    g_target: int,
    d: int,
    profiles: Sequence[Iterable[int]] = (),
    ceiling: dict[int, int] | None = None,
) -> Fraction:
    """Count tuples of permutations directly and divide by ``d!``.

    Genus 0 counts ``(s_1, ..., s_n)`` with ``s_1 ... s_n = 1``; genus 1 counts
    ``(a, b, s_1, ..., s_n)`` with ``[a, b] s_1 ... s_n = 1``.  The running
    product is kept as a histogram over the group, so the work per profile is
    ``|S(d)| * |class|`` instead of a full Cartesian product.
    """
    limits = dict(ORACLE_CEILING)
    limits.update(ceiling or {})
    if g_target not in limits:
        raise ValueError(f"the oracle handles target genus {sorted(limits)} only")
    if d > limits[g_target]:
        raise OracleTooLarge(
            f"oracle too large: degree {d} exceeds ceiling {limits[g_target]} for genus {g_target}"
        )
    profiles = [Partition(p) for p in profiles]
    for eta in profiles:
        if eta.size != d:
            raise ValueError(f"oracle profiles must have size {d}; got {eta}")
    classes = _classes(d)
    identity = tuple(range(d))
    if g_target == 0:
        running: dict = {identity: 1}
    else:
        running = dict(_commutator_counts(d))
    for eta in profiles:
        members = classes.get(eta, ())
        nxt: Counter = Counter()
        for g, count in running.items():
            for s in members:
                nxt[_compose(g, s)] += count
        running = nxt
    return Fraction(running.get(identity, 0), factorial(d))

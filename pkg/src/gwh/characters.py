"""Symmetric-group characters, central characters and the class algebra.

Characters are computed with the Murnaghan-Nakayama rule on beta-sets: removing
a border strip of length ``r`` from ``lambda`` is the same as moving one bead
of the beta-set ``{lambda_i + (l - i)}`` down by ``r`` onto a vacant position,
with sign ``(-1)**(beads jumped over)``.

The memo cache is a :func:`functools.lru_cache`, which is safe to read and
write from several threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Iterator, Mapping

from .partitions import Partition, class_size, enumerate_partitions

__all__ = [
    "character",
    "dimension",
    "hook_length_dimension",
    "central_character",
    "character_table",
    "ClassAlgebraElement",
    "DEFAULT_CHARACTER_CEILING",
]

DEFAULT_CHARACTER_CEILING = 16


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], eta: tuple[int, ...]) -> int:
    if not eta:
        return 1 if not lam else 0
    r, rest = eta[0], eta[1:]
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    occupied = set(beta)
    total = 0
    for idx, b in enumerate(beta):
        target = b - r
        if target < 0 or target in occupied:
            continue
        jumped = sum(1 for c in beta if target < c < b)
        new_beta = sorted((c for c in beta if c != b), reverse=True)
        new_beta.append(target)
        new_beta.sort(reverse=True)
        m = len(new_beta)
        new_lam = tuple(p for p in (new_beta[i] - (m - 1 - i) for i in range(m)) if p > 0)
        sign = -1 if jumped % 2 else 1
        total += sign * _mn(new_lam, rest)
    return total


def character(lam: Partition, eta: Partition) -> int:
    """``chi^lam`` evaluated on the class of cycle type ``eta``."""
    lam, eta = Partition(lam), Partition(eta)
    if lam.size != eta.size:
        raise ValueError(f"size mismatch: |{lam}| = {lam.size} but |{eta}| = {eta.size}")
    return _mn(tuple(lam), tuple(eta))


def dimension(lam: Partition) -> int:
    lam = Partition(lam)
    return _mn(tuple(lam), (1,) * lam.size)


def hook_length_dimension(lam: Partition) -> int:
    """``dim lam`` from the hook length formula (independent of the MN recursion)."""
    lam = Partition(lam)
    conj = lam.conjugate()
    hooks = prod(
        lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])
    )
    return factorial(lam.size) // hooks


def central_character(eta: Partition, lam: Partition) -> Fraction:
    """``f_eta(lam) = binom(|lam|, |eta|) |C_eta| chi^lam_eta / dim lam``.

    For ``|eta| < |lam|`` the character is restricted along ``S(|eta|) < S(|lam|)``,
    i.e. evaluated on ``eta`` padded with fixed points.
    """
    eta, lam = Partition(eta), Partition(lam)
    if not eta:
        return Fraction(1)
    n, k = lam.size, eta.size
    if k > n:
        return Fraction(0)
    padded = eta.union([1] * (n - k))
    return Fraction(comb(n, k) * class_size(eta) * character(lam, padded), dimension(lam))


def character_table(d: int) -> dict[Partition, dict[Partition, int]]:
    """``table[lam][eta] = chi^lam_eta`` for all partitions of ``d``."""
    parts = enumerate_partitions(d)
    return {lam: {eta: character(lam, eta) for eta in parts} for lam in parts}


class ClassAlgebraElement(Mapping):
    """Finite rational combination of conjugacy classes ``(mu)`` of all degrees.

    The class ``(mu)`` lives in the centre of ``Q S(|mu|)``; the degree is
    implicit in ``mu``.  Zero coefficients are dropped.
    """

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None):
        self._terms: dict[Partition, Fraction] = {}
        for mu, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                mu = Partition(mu)
                self._terms[mu] = self._terms.get(mu, Fraction(0)) + c
        self._terms = {mu: c for mu, c in self._terms.items() if c}

    @classmethod
    def basis(cls, mu: Iterable[int]) -> "ClassAlgebraElement":
        return cls({Partition(mu): 1})

    def __getitem__(self, mu) -> Fraction:
        return self._terms.get(Partition(mu), Fraction(0))

    def __iter__(self) -> Iterator[Partition]:
        return iter(sorted(self._terms, key=lambda p: (-p.size, [-x for x in p])))

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "ClassAlgebraElement") -> "ClassAlgebraElement":
        terms = dict(self._terms)
        for mu, c in other.items():
            terms[mu] = terms.get(mu, Fraction(0)) + c
        return ClassAlgebraElement(terms)

    def __sub__(self, other: "ClassAlgebraElement") -> "ClassAlgebraElement":
        return self + other * -1

    def __mul__(self, scalar) -> "ClassAlgebraElement":
        return ClassAlgebraElement({mu: c * scalar for mu, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, ClassAlgebraElement):
            return self._terms == other._terms
        return NotImplemented

    __hash__ = None

    def degrees(self) -> set[int]:
        return {mu.size for mu in self._terms}

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*({','.join(map(str, mu))})" for mu, c in self.items())
        return f"ClassAlgebraElement({body or '0'})"

    def to_json(self) -> list[dict]:
        return [{"class": mu.to_json(), "coefficient": str(c)} for mu, c in self.items()]

"""Integer partitions and the statistics used by the character formulas."""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable

__all__ = [
    "Partition",
    "OversizedProfile",
    "enumerate_partitions",
    "partitions_up_to",
    "z_factor",
    "class_size",
    "pad_to_degree",
    "parse_partition",
    "sub_multisets",
]


class OversizedProfile(ValueError):
    """A ramification profile is larger than the degree it is padded to."""


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Parts are sorted on construction, so ``Partition([1, 2])`` is ``(2, 1)``.
    The empty partition is ``Partition()``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, i: int) -> int:
        return self.count(i)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def aut_order(self) -> int:
        """``|Aut(mu)| = prod_i m_i(mu)!``."""
        return prod(factorial(m) for m in Counter(self).values())

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def union(self, other: Iterable[int]) -> "Partition":
        return Partition(tuple(self) + tuple(other))

    def remove_ones(self, i: int) -> "Partition":
        """The partition with ``i`` parts equal to 1 removed."""
        if i > self.multiplicity(1):
            raise ValueError(f"{self} has fewer than {i} parts equal to 1")
        return Partition(self[: len(self) - i])

    def __repr__(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"

    __str__ = __repr__

    def to_json(self) -> list[int]:
        return list(self)


def parse_partition(text: str | Iterable[int]) -> Partition:
    """Read the textual form ``"[3,2,1]"`` (``"[]"`` is the empty partition)."""
    if isinstance(text, str):
        value = json.loads(text)
    else:
        value = text
    if not isinstance(value, (list, tuple)) or not all(isinstance(v, int) for v in value):
        raise ValueError(f"not a partition: {text!r}")
    return Partition(value)


@lru_cache(maxsize=None)
def enumerate_partitions(d: int) -> tuple[Partition, ...]:
    """All partitions of ``d`` in reverse-lexicographic order."""
    if d < 0:
        raise ValueError("d must be non-negative")
    out: list[Partition] = []

    def rec(remaining: int, largest: int, prefix: list[int]):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(d, d, [])
    return tuple(out)


def partitions_up_to(D: int) -> list[Partition]:
    """Partitions of size ``<= D``, ordered by size and then reverse-lex."""
    return [p for d in range(D + 1) for p in enumerate_partitions(d)]


def z_factor(mu: Partition) -> int:
    """``z(mu) = |Aut(mu)| * prod(mu_i)``, the centralizer order."""
    return Partition(mu).aut_order() * prod(mu)


def class_size(mu: Partition) -> int:
    """Size of the conjugacy class of cycle type ``mu`` in ``S(|mu|)``."""
    mu = Partition(mu)
    return factorial(mu.size) // z_factor(mu)


def pad_to_degree(eta: Partition, d: int) -> tuple[Partition, int]:
    """Pad ``eta`` with parts 1 up to size ``d``.

    Returns the padded partition and the weight ``binom(m_1(padded), m_1(eta))``.
    """
    eta = Partition(eta)
    if eta.size > d:
        raise OversizedProfile(f"profile {eta} has size {eta.size} > degree {d}")
    padded = eta.union([1] * (d - eta.size))
    return padded, comb(padded.multiplicity(1), eta.multiplicity(1))


def sub_multisets(mu: Partition) -> list[Partition]:
    """All sub-multisets of the parts of ``mu`` (as partitions), ``mu`` included."""
    counts = sorted(Counter(mu).items(), reverse=True)
    out: list[Partition] = []

    def rec(i: int, acc: list[int]):
        if i == len(counts):
            out.append(Partition(acc))
            return
        part, m = counts[i]
        for k in range(m + 1):
            rec(i + 1, acc + [part] * k)

    rec(0, [])
    return out

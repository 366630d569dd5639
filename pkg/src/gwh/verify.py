"""Cross-pipeline verification suites.

Each suite yields ``(label, ok)`` checks; :func:`run_suites` runs a selection
and collects pass/fail counts.  Ceilings come from :class:`Ceilings` and can be
lowered from the command line or a config file.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial
from typing import Callable, Iterator

from .completion import (
    completed_cycle,
    completed_cycle_by_inversion,
    descendent_class,
)
from .characters import ClassAlgebraElement
from .elliptic import (
    elliptic_npoint_trace,
    quasimodularity_fit,
    NotQuasimodular,
    stationary_quasimodular_series,
    theta_determinant_npoint,
    weight_monomials,
)
from .fock import commutator_check
from .gw import (
    coefficient_identification_check,
    connected_absolute_table,
    connected_relative_npoint,
    connected_relative_table,
    degeneration_check,
    disconnected_npoint,
    domain_genus,
    elliptic_degeneration_check,
    gwh_substitution,
    hurwitz_degeneration_check,
    n_point_closed_form,
    one_point_closed_form,
    stationary_disconnected,
    toda_rhs,
    wwq_check,
)
from .hurwitz import hurwitz_number, hurwitz_oracle
from .partitions import Partition, enumerate_partitions, partitions_up_to
from .shifted import S_series, inverse_S_series

__all__ = ["Ceilings", "SuiteResult", "SUITES", "run_suite", "run_suites", "KNOWN_TABLES"]

# Reference expansions of the first four completed cycles.
KNOWN_TABLES = {
    1: {(1,): Fraction(1), (): Fraction(-1, 24)},
    2: {(2,): Fraction(1)},
    3: {(3,): Fraction(1), (1, 1): Fraction(1), (1,): Fraction(1, 12), (): Fraction(7, 2880)},
    4: {(4,): Fraction(1), (2, 1): Fraction(2), (2,): Fraction(5, 4)},
}


@dataclass(frozen=True)
class Ceilings:
    table_k: int = 4
    completion_k: int = 8
    leading_k: int = 8
    oracle_g0_degree: int = 5
    oracle_g0_profiles: int = 4
    oracle_g1_degree: int = 3
    oracle_g1_profiles: int = 2
    gwh_genera: tuple = (0, 1, 2)
    gwh_degree: int = 5
    gwh_points: int = 3
    gwh_k: int = 4
    degree0_order: int = 10
    degree0_points: int = 3
    one_point_size: int = 5
    one_point_order: int = 8
    fock_size: int = 4
    fock_points: int = 2
    fock_order: int = 8
    commutator_index: int = 3
    commutator_cutoff: int = 6
    npoint_size: int = 3
    npoint_order: int = 6
    toda_size: int = 3
    toda_points: int = 2
    toda_order: int = 6
    degeneration_degree: int = 4
    degeneration_points: int = 2
    degeneration_k: int = 5
    elliptic_points: int = 2
    elliptic_q: int = 5
    elliptic_z: int = 6
    quasimodular_weight: int = 10
    quasimodular_holdout: int = 3

    DEGREE_FIELDS = (
        "oracle_g0_degree",
        "oracle_g1_degree",
        "gwh_degree",
        "one_point_size",
        "fock_size",
        "npoint_size",
        "toda_size",
        "degeneration_degree",
    )

    def capped(self, max_degree: int | None) -> "Ceilings":
        """Lower every degree-like ceiling to ``max_degree``."""
        if max_degree is None:
            return self
        return replace(self, **{f: min(getattr(self, f), max_degree) for f in self.DEGREE_FIELDS})

    @classmethod
    def from_mapping(cls, data: dict) -> "Ceilings":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown ceilings: {sorted(unknown)}")
        values = {k: tuple(v) if isinstance(v, list) else v for k, v in data.items()}
        return replace(cls(), **values)

    def to_json(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self, timing: bool = False) -> dict:
        out = {"suite": self.name, "passed": self.passed, "failed": self.failed,
               "failures": self.failures[:20]}
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


Check = Iterator[tuple[str, bool]]


# -- suites ------------------------------------------------------------------


def suite_completion(c: Ceilings) -> Check:
    for k in range(1, c.table_k + 1):
        expected = ClassAlgebraElement(KNOWN_TABLES[k]) if k in KNOWN_TABLES else None
        if expected is not None:
            yield f"table k={k}", completed_cycle(k) == expected
    for k in range(1, c.completion_k + 1):
        yield f"rho vs inversion k={k}", completed_cycle(k) == completed_cycle_by_inversion(k)
    for k in range(0, c.leading_k + 1):
        cls = descendent_class(k) * factorial(k)
        yield f"leading term k={k}", cls[Partition([k + 1])] == 1
    for k in range(1, c.completion_k + 1):
        for mu, rho in completed_cycle(k).items():
            if mu:
                yield f"non-negative rho k={k} mu={mu}", rho >= 0
                if mu.size + mu.length == k + 1:
                    principal = Fraction(factorial(k - 1) * _prod(mu), factorial(mu.size))
                    yield f"principal term k={k} mu={mu}", rho == principal


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def suite_hurwitz(c: Ceilings) -> Check:
    for g, dmax, nmax in (
        (0, c.oracle_g0_degree, c.oracle_g0_profiles),
        (1, c.oracle_g1_degree, c.oracle_g1_profiles),
    ):
        for d in range(dmax + 1):
            parts = enumerate_partitions(d)
            for n in range(nmax + 1):
                for profiles in product(parts, repeat=n):
                    ok = hurwitz_oracle(g, d, profiles) == hurwitz_number(g, d, profiles)
                    yield f"oracle g={g} d={d} {list(profiles)}", ok


def _k_tuples(kmax: int, nmax: int, kmin: int = 0):
    for n in range(nmax + 1):
        yield from combinations_with_replacement(range(kmin, kmax + 1), n)


def suite_gwh(c: Ceilings) -> Check:
    for g in c.gwh_genera:
        for d in range(c.gwh_degree + 1):
            for ks in _k_tuples(c.gwh_k, c.gwh_points):
                value = stationary_disconnected(g, d, ks)
                ok = gwh_substitution(g, d, ks) == value
                yield f"gwh g={g} d={d} k={list(ks)}", ok
                if domain_genus(g, d, ks) is None:
                    yield f"dimension constraint g={g} d={d} k={list(ks)}", value == 0
                if d <= c.oracle_g1_degree and len(ks) < c.gwh_points:
                    trivial = gwh_substitution(g, d, ks, [[1] * d])
                    yield f"trivial profile g={g} d={d} k={list(ks)}", trivial == value


def suite_degree0(c: Ceilings) -> Check:
    order = c.degree0_order + 1
    inv_S = inverse_S_series(order)
    table = connected_absolute_table(0, 0, c.degree0_points, order)
    one = table[(0, (0,))]
    for g in range(0, c.degree0_order // 2 + 1):
        # <tau_{2g-2}>^circ_{g,0} sits at z^(2g-1) of the 1-point series
        if 2 * g - 1 < one.order:
            yield f"degree 0 genus {g}", one.coefficient((2 * g - 1,)) == inv_S[2 * g]
    for key, series in table.items():
        dd, pos = key
        if len(pos) >= 2:
            yield f"degree 0 multipoint {pos}", not series.terms


def suite_one_point(c: Ceilings) -> Check:
    order = c.one_point_order + 1
    for d in range(c.one_point_size + 1):
        parts = enumerate_partitions(d)
        for mu in parts:
            for nu in parts:
                shift = mu.length + nu.length - 1
                closed = one_point_closed_form(mu, nu, order)
                char = connected_relative_npoint(mu, nu, 1, order + shift)
                ok = all(
                    char.coefficient((e + shift,)) == closed[e] for e in range(order)
                )
                yield f"one-point mu={mu} nu={nu}", ok
        ones = Partition([1] * d)
        expected = S_series(order) ** (2 * d - 1) * Fraction(1, factorial(d) ** 2)
        yield f"one-point (1^{d})", one_point_closed_form(ones, ones, order) == expected


def suite_fock(c: Ceilings) -> Check:
    order = c.fock_order + 1
    for d in range(c.fock_size + 1):
        parts = enumerate_partitions(d)
        for mu in parts:
            for nu in parts:
                for n in range(c.fock_points + 1):
                    a = disconnected_npoint(mu, nu, n, order, "character")
                    b = disconnected_npoint(mu, nu, n, order, "operator")
                    yield f"operator vs character mu={mu} nu={nu} n={n}", a.agrees_with(b)
    r = c.commutator_index
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            ok = commutator_check(a, b, c.fock_order, c.commutator_cutoff)
            yield f"commutator a={a} b={b}", ok


def suite_npoint(c: Ceilings) -> Check:
    order = c.npoint_order + 1
    for d in range(c.npoint_size + 1):
        parts = enumerate_partitions(d)
        for mu in parts:
            for nu in parts:
                for n in (1, 2):
                    closed = n_point_closed_form(mu, nu, n, order)
                    char = connected_relative_npoint(mu, nu, n, order)
                    yield f"n-point mu={mu} nu={nu} n={n}", closed.agrees_with(char)


def suite_toda(c: Ceilings) -> Check:
    order = c.toda_order + 1
    for n in range(1, c.toda_points + 1):
        for d in range(c.toda_size + 1):
            parts = enumerate_partitions(d)
            for mu in parts:
                for nu in parts:
                    lhs = n_point_closed_form(mu.union([1]), nu.union([1]), n, order)
                    table = connected_relative_table(mu, nu, n, order + n)
                    rhs = toda_rhs(mu, nu, n, order, table)
                    yield f"toda mu={mu} nu={nu} n={n}", lhs.agrees_with(rhs, order)


def suite_degeneration(c: Ceilings) -> Check:
    for d in range(c.degeneration_degree + 1):
        for ks in _k_tuples(c.degeneration_k, c.degeneration_points):
            yield f"degeneration P1 d={d} k={list(ks)}", degeneration_check(0, d, ks)
            yield f"degeneration E d={d} k={list(ks)}", degeneration_check(1, d, ks)
            yield f"elliptic gluing d={d} k={list(ks)}", elliptic_degeneration_check(d, ks)
        for ks in _k_tuples(c.degeneration_k, c.degeneration_points, kmin=1):
            if ks:
                for g in (0, 1):
                    ok = hurwitz_degeneration_check(g, d, ks)
                    yield f"hurwitz degeneration g={g} d={d} k={list(ks)}", ok
        for mu in enumerate_partitions(d):
            for k in range(0, c.degeneration_k + 1):
                yield f"one-point shortcut mu={mu} k={k}", wwq_check(mu, k)
    for k in range(0, c.completion_k):
        for mu in partitions_up_to(k + 1):
            ok = coefficient_identification_check(k, mu)
            yield f"rho identification k={k} mu={mu}", ok


def suite_elliptic(c: Ceilings) -> Check:
    z_order = c.elliptic_z + 1
    for n in range(1, c.elliptic_points + 1):
        trace = elliptic_npoint_trace(n, z_order, c.elliptic_q)
        theta = theta_determinant_npoint(n, z_order, c.elliptic_q)
        yield f"trace vs theta n={n}", trace.agrees_with(theta)
    W = c.quasimodular_weight
    q_order = len(weight_monomials(W)) + c.quasimodular_holdout + 2
    for ks in _k_tuples(W - 2, W // 2):
        w = sum(k + 2 for k in ks)
        if w > W:
            continue
        series = stationary_quasimodular_series(ks, q_order)
        try:
            coef = quasimodularity_fit(series, w, c.quasimodular_holdout)
            ok = True
            if list(ks) == [0]:
                ok = coef == {(1, 0, 0): Fraction(1)}
        except NotQuasimodular:
            ok = False
        yield f"quasimodular k={list(ks)} weight={w}", ok


SUITES: dict[str, Callable[[Ceilings], Check]] = {
    "completion": suite_completion,
    "hurwitz": suite_hurwitz,
    "gwh": suite_gwh,
    "degree0": suite_degree0,
    "one-point": suite_one_point,
    "fock": suite_fock,
    "npoint": suite_npoint,
    "toda": suite_toda,
    "degeneration": suite_degeneration,
    "elliptic": suite_elliptic,
}


def run_suite(name: str, ceilings: Ceilings | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    ceilings = ceilings or Ceilings()
    result = SuiteResult(name)
    start = time.perf_counter()
    for label, ok in SUITES[name](ceilings):
        if ok:
            result.passed += 1
        else:
            result.failed += 1
            result.failures.append(label)
    result.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return result


def run_suites(names, ceilings: Ceilings | None = None, threads: int | None = None) -> list[SuiteResult]:
    """Run suites in the given order; ``threads`` (or ``GWH_THREADS``) sets a pool size."""
    names = list(names)
    if threads is None:
        threads = int(os.environ.get("GWH_THREADS", "1") or 1)
    if threads <= 1 or len(names) <= 1:
        return [run_suite(n, ceilings) for n in names]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda n: run_suite(n, ceilings), names))

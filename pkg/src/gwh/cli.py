"""Command-line interface: ``gwh <command> [options]``.

Every command prints one JSON object on standard output.  Rationals are
written as ``"p/q"`` strings and keys are sorted, so the output for a fixed
query is byte-for-byte stable.  Exit status is 0 on success, 1 when a
verification fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .characters import central_character, character, character_table
from .completion import completed_cycle, completed_cycle_by_inversion
from .elliptic import (
    NotQuasimodular,
    QuasimodularFit,
    elliptic_npoint_trace,
    elliptic_series,
    stationary_quasimodular_series,
    theta_determinant_npoint,
    weight_monomials,
)
from .gw import (
    connected_absolute,
    connected_relative,
    disconnected_npoint,
    domain_genus,
    extract_coefficient,
    gwh_substitution,
    n_point_closed_form,
    relative_p1_disconnected,
    stationary_disconnected,
)
from .hurwitz import hurwitz_number, hurwitz_oracle, riemann_hurwitz_genus
from .partitions import Partition, parse_partition
from .series import QSeries
from .shifted import PMinusOne, p_k
from .verify import SUITES, Ceilings, run_suites

log = logging.getLogger("gwh")


class UsageError(ValueError):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload: dict):
        super().__init__("verification failed")
        self.payload = payload


def _json_value(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, PMinusOne):
        return "p_{-1}"
    if isinstance(x, Partition):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    return x


def _parse_json_list(text: str, what: str) -> list:
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: expected a JSON list, got {text!r}") from exc
    if not isinstance(value, list):
        raise UsageError(f"{what}: expected a JSON list, got {text!r}")
    return value


def _parse_ks(text: str) -> list[int]:
    ks = _parse_json_list(text, "--k")
    if not all(isinstance(k, int) and k >= -2 for k in ks):
        raise UsageError("--k: descendent indices must be integers >= -2")
    return ks


def _parse_profiles(text: str) -> list[Partition]:
    return [parse_partition(p) for p in _parse_json_list(text, "--profiles")]


def _qseries_json(s: QSeries) -> list[str]:
    return [str(s[i]) for i in range(s.D + 1)]


# -- commands ---------------------------------------------------------------


def cmd_hurwitz(args) -> dict:
    profiles = _parse_profiles(args.profiles)
    query = {"target_genus": args.target_genus, "degree": args.degree,
             "profiles": [p.to_json() for p in profiles]}
    if args.oracle:
        ceiling = {args.target_genus: args.oracle_ceiling} if args.oracle_ceiling else None
        value = hurwitz_oracle(args.target_genus, args.degree, profiles, ceiling)
        pipeline = "oracle"
    else:
        value = hurwitz_number(args.target_genus, args.degree, profiles)
        pipeline = "character"
    return {"query": query, "value": value, "pipeline": pipeline,
            "domain_genus": riemann_hurwitz_genus(args.degree, args.target_genus, profiles)}


def cmd_characters(args) -> dict:
    query: dict = {} if args.degree is None else {"degree": args.degree}
    if args.lam is not None:
        lam = parse_partition(args.lam)
        query["lambda"] = lam.to_json()
        if args.eta is None:
            raise UsageError("--lam needs --eta")
        eta = parse_partition(args.eta)
        query["eta"] = eta.to_json()
        if args.central:
            value: Any = central_character(eta, lam)
        else:
            value = character(lam, eta)
        return {"query": query, "value": value, "pipeline": "murnaghan-nakayama"}
    if args.degree is None:
        raise UsageError("give --degree, or --lam with --eta")
    table = character_table(args.degree)
    rows = {
        json.dumps(lam.to_json()): {json.dumps(eta.to_json()): v for eta, v in row.items()}
        for lam, row in table.items()
    }
    return {"query": query, "values": rows, "pipeline": "murnaghan-nakayama"}


def cmd_pk(args) -> dict:
    lam = parse_partition(args.lam)
    return {"query": {"k": args.k, "lambda": lam.to_json()}, "value": p_k(args.k, lam),
            "pipeline": "shifted-power-sum"}


def cmd_completed_cycle(args) -> dict:
    if args.method == "rho":
        cycle = completed_cycle(args.k)
    else:
        cycle = completed_cycle_by_inversion(args.k)
    return {"query": {"k": args.k}, "values": cycle.to_json(), "pipeline": args.method}


def _gw_relative(args, ks, mu, nu) -> tuple[Fraction, str]:
    if args.target_genus != 0:
        raise UsageError("relative invariants are available for the projective line only")
    pipeline = args.pipeline
    n = len(ks)
    if pipeline == "substitution":
        if args.connected:
            raise UsageError("the substitution pipeline gives disconnected invariants")
        return gwh_substitution(0, mu.size, ks, [mu, nu]), pipeline
    if pipeline == "closed":
        if not args.connected:
            raise UsageError("the closed pipeline gives connected invariants; add --connected")
        if n == 0:
            raise UsageError("the closed pipeline needs at least one insertion")
        if any(k < 0 for k in ks):
            raise UsageError("the closed pipeline needs k >= 0")
        order = sum(k + 1 for k in ks) + 1
        return extract_coefficient(n_point_closed_form(mu, nu, n, order), ks), pipeline
    if args.connected:
        return connected_relative(mu, nu, ks, pipeline), pipeline
    if pipeline == "character":
        return relative_p1_disconnected(mu, nu, ks), pipeline
    if any(k < 0 for k in ks):
        raise UsageError("the operator pipeline needs k >= 0")
    order = sum(k + 1 for k in ks) + 1
    return extract_coefficient(disconnected_npoint(mu, nu, n, order, "operator"), ks), pipeline


def cmd_gw(args) -> dict:
    ks = _parse_ks(args.k)
    d = args.degree
    query: dict = {"target_genus": args.target_genus, "degree": d, "k": ks,
                   "connected": args.connected}
    profiles: list[Partition] = []
    if args.mu is not None or args.nu is not None:
        mu = parse_partition(args.mu) if args.mu is not None else Partition([1] * d)
        nu = parse_partition(args.nu) if args.nu is not None else Partition([1] * d)
        if mu.size != d or nu.size != d:
            raise UsageError(f"--mu and --nu must be partitions of the degree {d}")
        query["mu"], query["nu"] = mu.to_json(), nu.to_json()
        profiles = [mu, nu]
        value, pipeline = _gw_relative(args, ks, mu, nu)
    else:
        pipeline = args.pipeline
        if pipeline == "substitution":
            if args.connected:
                raise UsageError("the substitution pipeline gives disconnected invariants")
            value = gwh_substitution(args.target_genus, d, ks)
        elif pipeline == "character":
            if args.connected:
                value = connected_absolute(args.target_genus, d, ks)
            else:
                value = stationary_disconnected(args.target_genus, d, ks)
        else:
            raise UsageError(
                f"pipeline {pipeline!r} needs relative conditions (--mu/--nu)"
            )
    return {"query": query, "value": value, "pipeline": pipeline,
            "domain_genus": domain_genus(args.target_genus, d, ks, profiles)}


def cmd_elliptic(args) -> dict:
    ks = _parse_ks(args.k)
    D = args.q_order
    query: dict = {"k": ks, "q_order": D}
    if args.fit_weight is not None:
        W = args.fit_weight
        query["fit_weight"] = W
        D = max(D, len(weight_monomials(W)) + args.holdout)
        series = stationary_quasimodular_series(ks, D)
        try:
            fit = QuasimodularFit(W, args.holdout).fit(series)
        except NotQuasimodular as exc:
            raise VerificationFailed({"query": query, "error": str(exc),
                                      "pipeline": "quasimodular-fit"}) from exc
        return {"query": query, "values": fit.to_json(), "pipeline": "quasimodular-fit",
                "truncation": D}
    if args.pipeline == "character":
        series = elliptic_series(ks, D)
    else:
        if not ks or any(k < 0 for k in ks):
            raise UsageError(f"the {args.pipeline} pipeline needs indices k >= 0")
        n = len(ks)
        z_order = sum(k + 1 for k in ks) + 1
        if args.pipeline == "trace":
            full = elliptic_npoint_trace(n, z_order, D)
        else:
            full = theta_determinant_npoint(n, z_order, D)
        coef = full.coefficient(tuple(k + 1 for k in ks))
        series = coef if isinstance(coef, QSeries) else QSeries([coef], D)
    return {"query": query, "values": _qseries_json(series), "pipeline": args.pipeline,
            "truncation": D, "domain_genus": [domain_genus(1, d, ks) for d in range(D + 1)]}


def cmd_verify(args) -> dict:
    ceilings = args.ceilings.capped(args.max_degree)
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(names, ceilings)
    payload = {
        "query": {"suite": args.suite, "max_degree": args.max_degree},
        "values": [r.to_json(args.timing) for r in results],
        "pipeline": "verify",
        "passed": sum(r.passed for r in results),
        "failed": sum(r.failed for r in results),
    }
    if payload["failed"]:
        raise VerificationFailed(payload)
    return payload


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gwh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gwh {__version__}")
    parser.add_argument("--config", type=Path, help="JSON file with a 'ceilings' object")
    parser.add_argument("--cache", type=Path, help="JSON-lines result cache")
    parser.add_argument("--timing", action="store_true", help="add elapsed_ms to the output")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hurwitz", help="Hurwitz numbers")
    p.add_argument("--target-genus", "--genus", type=int, default=0)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--profiles", default="[]", help='JSON list of partitions, e.g. "[[2],[2]]"')
    p.add_argument("--oracle", action="store_true", help="count permutations directly")
    p.add_argument("--oracle-ceiling", type=int, help="raise the oracle degree limit")
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("characters", help="symmetric group characters")
    p.add_argument("--degree", type=int)
    p.add_argument("--lam", help="representation, e.g. [2,1]")
    p.add_argument("--eta", help="conjugacy class, e.g. [3]")
    p.add_argument("--central", action="store_true", help="central character f_eta(lam)")
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("pk", help="shifted power sums")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lam", required=True)
    p.set_defaults(func=cmd_pk)

    p = sub.add_parser("completed-cycle", help="completed cycles")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("rho", "inversion"), default="rho")
    p.set_defaults(func=cmd_completed_cycle)

    p = sub.add_parser("gw", help="stationary invariants of target curves")
    p.add_argument("--target-genus", type=int, default=0)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--k", default="[]", help='JSON list of descendent indices, e.g. "[1,1]"')
    p.add_argument("--mu", help="relative condition over 0")
    p.add_argument("--nu", help="relative condition over infinity")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--pipeline", choices=("character", "operator", "closed", "substitution"),
                   default="character")
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("elliptic", help="elliptic target q-series")
    p.add_argument("--k", default="[0]")
    p.add_argument("--q-order", type=int, default=6)
    p.add_argument("--pipeline", choices=("character", "trace", "theta"), default="character")
    p.add_argument("--fit-weight", type=int)
    p.add_argument("--holdout", type=int, default=3)
    p.set_defaults(func=cmd_elliptic)

    p = sub.add_parser("verify", help="cross-pipeline verification suites")
    p.add_argument("--suite", choices=("all", *sorted(SUITES)), default="all")
    p.add_argument("--max-degree", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


# -- cache and config ---------------------------------------------------------


def _query_key(argv: Sequence[str]) -> str:
    return hashlib.sha256(json.dumps(list(argv)).encode()).hexdigest()


def _cache_lookup(path: Path, key: str) -> dict | None:
    if not path.exists():
        return None
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                entry = json.loads(line)
            except json.JSONDecodeError:
                log.warning("skipping corrupt cache line")
                continue
            if entry.get("key") == key:
                return entry["result"]
    return None


def _cache_store(path: Path, key: str, result: dict) -> None:
    with path.open("a") as fh:
        fh.write(json.dumps({"key": key, "result": result}, sort_keys=True) + "\n")


def _load_ceilings(path: Path | None) -> Ceilings:
    if path is None:
        return Ceilings()
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return Ceilings.from_mapping(data.get("ceilings", {}))


def _cache_argv(argv: Sequence[str]) -> list[str]:
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("--cache", "--timing", "-v", "--verbose"):
            skip = a == "--cache"
            continue
        if a.startswith("--cache="):
            continue
        out.append(a)
    return out


def _emit(payload: dict, stream) -> None:
    stream.write(json.dumps(_json_value(payload), sort_keys=True) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    key = None
    try:
        args.ceilings = _load_ceilings(args.config)
        if args.cache is not None and args.command != "verify":
            key = _query_key(_cache_argv(argv))
            cached = _cache_lookup(args.cache, key)
            if cached is not None:
                log.debug("cache hit %s", key[:12])
                if args.timing:
                    cached = dict(cached, elapsed_ms=int((time.perf_counter() - start) * 1000))
                _emit(cached, sys.stdout)
                return 0
        payload = args.func(args)
    except VerificationFailed as exc:
        payload = exc.payload
        if args.timing:
            payload["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
        _emit(payload, sys.stdout)
        return 1
    except (UsageError, ValueError, KeyError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"gwh: error: {exc}\n")
        return 2
    result = _json_value(payload)
    if key is not None:
        _cache_store(args.cache, key, result)
    if args.timing:
        result["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
    _emit(result, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: gen, analyze, verify, sweep.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import generators, io
from .integration import gains_report, trivial_lower_bound, worst_case_value
from .model import Instance, Matching, Population, Side, ValidationError, restrict
from .stability import (
    ENUMERATION_GUARD,
    blocking_pairs,
    deferred_acceptance,
    enumerate_stable,
    stable_scheme,
)

SIDES = {"men": Side.MAN, "women": Side.WOMAN}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    kappa_list: List[int]
    n_list: List[int]
    mode: str  # "worst" | "random"
    seeds: List[int] = field(default_factory=list)
    proposing_side: Side = Side.MAN

    def __post_init__(self):
        if self.mode not in ("worst", "random"):
            raise UsageError(f"unknown sweep mode {self.mode!r}")
        if not self.kappa_list or not self.n_list:
            raise UsageError("kappa and n lists must be non-empty")
        if any(not isinstance(v, int) or v < 1 for v in self.kappa_list + self.n_list):
            raise UsageError("kappa and n values must be positive integers")
        if self.mode == "worst" and any(v % 2 for v in self.kappa_list + self.n_list):
            raise UsageError("worst-case sweeps require even kappa and n")
        if self.mode == "random" and not self.seeds:
            raise UsageError("random sweeps need a non-empty seed range")

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "SweepSpec":
        allowed = {"mode", "kappa", "n", "seeds", "side"}
        if not isinstance(doc, dict) or set(doc) - allowed:
            raise UsageError(f"sweep spec accepts only {sorted(allowed)}")
        seeds = doc.get("seeds", [])
        if isinstance(seeds, dict):
            seeds = list(range(seeds["start"], seeds["stop"]))
        side = doc.get("side", "men")
        if side not in SIDES:
            raise UsageError(f"unknown side {side!r}")
        return cls(list(doc.get("kappa", [])), list(doc.get("n", [])), doc.get("mode", ""), list(seeds), SIDES[side])

    def items(self) -> List[tuple]:
        out = []
        for kappa in self.kappa_list:
            for n in self.n_list:
                if self.mode == "worst":
                    out.append((self.mode, kappa, n, None, self.proposing_side))
                else:
                    out.extend((self.mode, kappa, n, s, self.proposing_side) for s in self.seeds)
        return out


def sweep_row(item: tuple) -> Dict[str, Any]:
    mode, kappa, n, seed, side = item
    if mode == "worst":
        instance = generators.worst_case_instance(kappa, n)
    else:
        instance = generators.random_instance(kappa, n, seed)
    report = gains_report(instance, stable_scheme(instance, side))
    bound_ok = report.Gamma_bar >= trivial_lower_bound(kappa, n)
    if mode == "worst":
        return io.csv_row(report, "worst", bound_ok, report.Gamma_bar == worst_case_value(kappa, n))
    return io.csv_row(report, seed, bound_ok)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> List[Dict[str, Any]]:
    items = spec.items()
    if jobs <= 1:
        return [sweep_row(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(sweep_row, items, chunksize=max(1, len(items) // (4 * jobs))))


def _load_instance(path: str) -> Instance:
    try:
        return io.read_instance(path)
    except (OSError, io.FormatError, ValidationError) as e:
        raise UsageError(f"cannot load instance {path}: {e}") from None


def cmd_gen(args) -> int:
    family = args.family
    if family == "prop1":
        instance = generators.proposition1_instance()
    elif family == "worst":
        if args.kappa is None or args.n is None:
            raise UsageError("--family worst needs --kappa and --n")
        if args.kappa < 2 or args.n < 2 or args.kappa % 2 or args.n % 2:
            raise UsageError("construction requires even kappa and n")
        instance = generators.worst_case_instance(args.kappa, args.n)
    else:
        if args.kappa is None or args.n is None or args.seed is None:
            raise UsageError("--family random needs --kappa, --n and --seed")
        instance = generators.random_instance(args.kappa, args.n, args.seed)
    io.write_instance(instance, args.out)
    print(f"kappa = {instance.kappa}, n = {instance.n}")
    if family in ("worst", "prop1"):
        print(f"predicted Gamma_bar = {io.format_fraction(worst_case_value(instance.kappa, instance.n))}")
    return 0


def cmd_analyze(args) -> int:
    instance = _load_instance(args.instance)
    side = SIDES[args.side]
    scheme = stable_scheme(instance, side)
    other = stable_scheme(instance, side.other)
    if other != scheme:
        print("warning: men- and women-optimal stable schemes differ; results depend on --side", file=sys.stderr)
    report = gains_report(instance, scheme)
    bound_ok = report.Gamma_bar >= trivial_lower_bound(instance.kappa, instance.n)
    if args.report:
        io.write_report(report, scheme, args.report)
    if args.csv:
        io.write_csv([io.csv_row(report, args.instance, bound_ok)], args.csv)
    print(f"Gamma_bar = {io.format_fraction(report.Gamma_bar)}")
    print(f"Gamma = {io.format_fraction(report.Gamma)}")
    print(f"gainers {report.gainers}, losers {report.losers}, unchanged {report.unchanged}")
    print(f"bound_ok {str(bound_ok).lower()}")
    return 0


def verify(instance: Instance, supplied: Optional[Dict[str, Any]] = None, exhaustive: bool = False) -> Dict[str, Any]:
    """Stability, uniqueness and (optionally) exhaustive checks of a scheme."""
    supplied = supplied or {"communities": {}, "society": None}
    failures: List[Dict[str, Any]] = []
    checks: List[Dict[str, Any]] = []
    result: Dict[str, Any] = {"checks": checks, "failures": failures}

    problems = [(f"community {c}", restrict(instance, Population([c])), supplied["communities"].get(c)) for c in instance.communities]
    problems.append(("society", instance, supplied["society"]))
    matchings: Dict[str, Matching] = {}
    for name, problem, given in problems:
        mosm = deferred_acceptance(problem, Side.MAN)
        wosm = deferred_acceptance(problem, Side.WOMAN)
        mu = given if given is not None else mosm
        matchings[name] = mu
        try:
            bps = blocking_pairs(mu, problem)
        except ValueError as e:
            failures.append({"check": "stable", "population": name, "error": str(e)})
            continue
        perfect = len(mu) == len(problem.men)
        checks.append({"check": "stable", "population": name, "ok": not bps and perfect})
        if bps:
            failures.append(
                {"check": "stable", "population": name, "blocking_pairs": [[str(b.man), str(b.woman)] for b in bps]}
            )
        elif not perfect:
            failures.append({"check": "stable", "population": name, "error": "matching is not perfect"})
        unique = mosm == wosm
        checks.append({"check": "unique", "population": name, "ok": unique})
        if not unique:
            failures.append({"check": "unique", "population": name, "error": "MOSM differs from WOSM"})

    if exhaustive:
        if len(instance.men) > ENUMERATION_GUARD:
            failures.append({"check": "exhaustive", "error": "instance too large for exhaustive enumeration"})
        else:
            stable_set = enumerate_stable(instance)
            result["stable_set_size"] = len(stable_set)
            ok = len(stable_set) == 1 and matchings["society"] in stable_set
            checks.append({"check": "exhaustive", "population": "society", "ok": ok})
            if not ok:
                failures.append({"check": "exhaustive", "population": "society", "stable_set_size": len(stable_set)})
    result["ok"] = not failures
    return result


def cmd_verify(args) -> int:
    instance = _load_instance(args.instance)
    supplied = None
    if args.matching:
        try:
            supplied = io.read_partial_scheme(args.matching)
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot load matching {args.matching}: {e}") from None
    result = verify(instance, supplied, args.exhaustive)
    print(json.dumps(result, indent=2))
    return 0 if result["ok"] else 1


def cmd_sweep(args) -> int:
    try:
        with open(args.spec) as f:
            spec = SweepSpec.from_dict(json.load(f))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        raise UsageError(f"bad sweep spec: {e}") from None
    rows = run_sweep(spec, args.jobs)
    io.write_csv(rows, args.csv)
    gammas = [Fraction(r["Gamma_bar_num"], r["Gamma_bar_den"]) for r in rows]
    mean = sum(gammas, Fraction(0)) / len(gammas)
    summary = f"rows {len(rows)}, mean Gamma_bar = {io.format_fraction(mean)} ({float(mean):.6f})"
    if spec.mode == "worst":
        summary += f", formula_match all {str(all(r['formula_match'] == 'true' for r in rows)).lower()}"
    summary += f", bound_ok all {str(all(r['bound_ok'] == 'true' for r in rows)).lower()}"
    print(summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="integration-losses", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("--family", choices=["worst", "prop1", "random"], required=True)
    p.add_argument("--kappa", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="solve the stable scheme and report gains from integration")
    p.add_argument("instance")
    p.add_argument("--side", choices=list(SIDES), default="men")
    p.add_argument("--report")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check stability and uniqueness of the stable scheme")
    p.add_argument("instance")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--matching", help="scheme JSON overriding the computed matchings")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run a parameter grid and write one CSV row per item")
    p.add_argument("--spec", required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes follow SAT-solver habits: 0 for SAT (or a passing check), 20 for
UNSAT, 1 for a failed check and 64 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .bench import run_bench
from .gadgets import reduce_stubborn, solve_list_3cc, solve_stubborn
from .generate import FAMILIES, GenSpec, gen
from .instance import (
    Colour,
    ParseError,
    feasible_3cc,
    feasible_list_3cc,
    feasible_stubborn,
    parse_3cc,
    parse_solution,
    parse_stubborn,
    serialize_3cc,
    serialize_solution,
)

EXIT_SAT, EXIT_FAIL, EXIT_UNSAT, EXIT_USAGE = 0, 1, 20, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _kind(text: str) -> str:
    for line in text.splitlines():
        toks = line.split()
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "p" and len(toks) > 1 and toks[1] in ("3cc", "stubborn"):
            return toks[1]
        break
    raise UsageError("input is neither a 3cc nor a stubborn file")


def _emit(out, values, stats_json, fmt: str, show_stats: bool) -> None:
    if fmt == "json":
        payload = {"verdict": "SAT" if values is not None else "UNSAT"}
        if values is not None:
            payload["colouring"] = [v.letter if isinstance(v, Colour) else v for v in values]
        if show_stats and stats_json is not None:
            payload["stats"] = stats_json
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return
    out.write(serialize_solution(values))
    if show_stats and stats_json is not None:
        out.write("c stats " + json.dumps(stats_json, sort_keys=True) + "\n")


def _stats_json(res, timing: bool) -> dict:
    d = res.stats.to_dict()
    d["verdict"] = "SAT" if res.sat else "UNSAT"
    if timing:
        d["wall_time_ms"] = round(res.wall_time_ms, 3)
    return d


def cmd_solve(args, out) -> int:
    inst, lists = parse_3cc(_read(args.file))
    res = solve_list_3cc(inst, lists, verify=args.verify_invariants)
    _emit(out, res.colouring, _stats_json(res, not args.no_timing), args.format, args.stats)
    return EXIT_SAT if res.sat else EXIT_UNSAT


def cmd_solve_stubborn(args, out) -> int:
    inst = parse_stubborn(_read(args.file))
    res = solve_stubborn(inst, verify=args.verify_invariants)
    _emit(out, res.colouring, _stats_json(res, not args.no_timing), args.format, args.stats)
    return EXIT_SAT if res.sat else EXIT_UNSAT


def cmd_check(args, out) -> int:
    text = _read(args.instance)
    kind = _kind(text)
    values = parse_solution(_read(args.solution), kind)
    if kind == "3cc":
        inst, lists = parse_3cc(text)
        n = inst.n
    else:
        inst, lists = parse_stubborn(text), None
        n = inst.n
    if values is None:
        limit = oracle.MAX_3CC if kind == "3cc" else oracle.MAX_STUBBORN
        if n > limit:
            out.write(f"c cannot verify UNSAT claim for n = {n} > {limit}\n")
            return EXIT_FAIL
        found = oracle.brute_force_3cc(inst, lists) if kind == "3cc" else oracle.brute_force_stubborn(inst)
        ok = found is None
    elif len(values) != n:
        ok = False
    elif kind == "3cc":
        ok = feasible_list_3cc(inst, lists, values) if lists is not None else feasible_3cc(inst, values)
    else:
        ok = feasible_stubborn(inst, values)
    out.write("c check OK\n" if ok else "c check FAILED\n")
    return EXIT_SAT if ok else EXIT_FAIL


def cmd_reduce(args, out) -> int:
    inst = parse_stubborn(_read(args.input))
    reduced, rmap = reduce_stubborn(inst)
    Path(args.out3cc).write_text(serialize_3cc(reduced))
    Path(args.outmap).write_text(rmap.dumps())
    out.write(f"c reduced {inst.n} vertices to {reduced.n}\n")
    return EXIT_SAT


def cmd_oracle(args, out) -> int:
    text = _read(args.file)
    if _kind(text) == "3cc":
        inst, lists = parse_3cc(text)
        if inst.n > oracle.MAX_3CC:
            raise UsageError(f"oracle limited to n <= {oracle.MAX_3CC}")
        values = oracle.brute_force_3cc(inst, lists)
    else:
        inst = parse_stubborn(text)
        if inst.n > oracle.MAX_STUBBORN:
            raise UsageError(f"oracle limited to n <= {oracle.MAX_STUBBORN}")
        values = oracle.brute_force_stubborn(inst)
    _emit(out, values, None, args.format, False)
    return EXIT_SAT if values is not None else EXIT_UNSAT


def _spec(args) -> GenSpec:
    try:
        return GenSpec(args.family, args.n, args.seed, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_gen(args, out) -> int:
    text = gen(_spec(args))
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_SAT


def cmd_bench(args, out) -> int:
    _spec(args)
    all_ok = True
    for rec in run_bench(args.family, args.n, args.count, args.seed, args.p, args.verify_invariants):
        all_ok &= rec.ok
        out.write(json.dumps(rec.to_json(timing=not args.no_timing), sort_keys=True) + "\n")
        out.flush()
    return EXIT_SAT if all_ok else EXIT_FAIL


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="compatcol", description="3-compatible colouring and stubborn problem solver")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def solver_flags(sp):
        sp.add_argument("file")
        sp.add_argument("--stats", action="store_true", help="also print search statistics")
        sp.add_argument("--verify-invariants", action="store_true",
                        help="check the proper invariants after every step")
        sp.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    solver_flags(sub.add_parser("solve", help="solve a 3cc file"))
    solver_flags(sub.add_parser("solve-stubborn", help="solve a stubborn file"))

    sp = sub.add_parser("check", help="verify a solution file against an instance")
    sp.add_argument("instance")
    sp.add_argument("solution")

    sp = sub.add_parser("reduce-stubborn", help="write the equivalent 3cc instance and its map")
    sp.add_argument("input")
    sp.add_argument("out3cc")
    sp.add_argument("outmap")

    sp = sub.add_parser("oracle", help="brute-force decider for small instances")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("text", "json"), default="text")

    for name in ("gen", "bench"):
        sp = sub.add_parser(name)
        sp.add_argument("--family", choices=FAMILIES, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=float, default=0.5)
        sp.add_argument("--seed", type=_seed, required=True)
        if name == "gen":
            sp.add_argument("--out")
        else:
            sp.add_argument("--count", type=int, default=1)
            sp.add_argument("--verify-invariants", action="store_true")
            sp.add_argument("--no-timing", action="store_true")
            sp.add_argument("--format", choices=("json",), default="json")
    return p


COMMANDS = {
    "solve": cmd_solve,
    "solve-stubborn": cmd_solve_stubborn,
    "check": cmd_check,
    "reduce-stubborn": cmd_reduce,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.cmd](args, out)
    except (ParseError, UsageError) as exc:
        err.write(f"compatcol: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())

"""Command-line front door.

    itt check <file>                 elaborate; print `term : type` per #check
    itt reduce <file> [options]      elaborate; run each #reduce pragma
    itt corpus [--case NAME] [...]   run the embedded example suite

Exit codes: 0 success / all NormalForm / expectations met; 1 parse or type
error; 2 usage error; 3 fuel exhaustion; 4 a detected cycle (dominates 3);
70 internal invariant violation.  ITT_MAX_STEPS overrides the default step
budget; an explicit --max-steps wins over the environment.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import corpus as corpus_mod
from .parser import ParseError, parse_program
from .reduce import (
    CYCLE_DETECTED, FUEL_EXHAUSTED, trace_to_json_lines, trace_to_text,
)
from .rules import DEFAULT_FUEL, FuelExhausted, RuleSet
from .syntax import ScopeError, pretty
from .typecheck import TypeCheckError, elaborate

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_FUEL = 3
EXIT_CYCLE = 4
EXIT_INTERNAL = 70


def _add_rule_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-cast-rule", action="store_true",
                   help="disable the cast reduction rule")
    p.add_argument("--no-eqrec-rule", action="store_true",
                   help="disable the Eq_rec reduction rule")
    p.add_argument("--enable-j", action="store_true",
                   help="enable the J operator and its rule")
    p.add_argument("--no-proof-irrelevance", action="store_true",
                   help="disable proof irrelevance in conversion")
    p.add_argument("--max-steps", type=int, metavar="N",
                   help="step budget (default 100000; env ITT_MAX_STEPS)")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="itt", description=__doc__.split("\n")[0])
    sub = top.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="type-check a file")
    check.add_argument("path", help="input file, or - for standard input")
    _add_rule_flags(check)

    reduce_p = sub.add_parser("reduce", help="run the #reduce pragmas of a file")
    reduce_p.add_argument("path", help="input file, or - for standard input")
    reduce_p.add_argument("--strategy", choices=("whnf", "nf"), default="nf",
                          help="weak-head or strong normalization (default nf)")
    reduce_p.add_argument("--trace", choices=("text", "json", "off"),
                          default="off", help="emit the step trace")
    _add_rule_flags(reduce_p)

    corpus_p = sub.add_parser("corpus", help="run the embedded example suite")
    corpus_p.add_argument("--case", choices=corpus_mod.CASE_NAMES,
                          help="run a single case")
    _add_rule_flags(corpus_p)
    return top


def _resolve_fuel(args: argparse.Namespace) -> int:
    if args.max_steps is not None:
        if args.max_steps <= 0:
            raise _Usage("--max-steps must be positive")
        return args.max_steps
    env = os.environ.get("ITT_MAX_STEPS")
    if env is not None:
        try:
            fuel = int(env)
        except ValueError:
            raise _Usage(f"ITT_MAX_STEPS must be an integer, got {env!r}")
        if fuel <= 0:
            raise _Usage("ITT_MAX_STEPS must be positive")
        return fuel
    return DEFAULT_FUEL


def _ruleset(args: argparse.Namespace) -> RuleSet:
    return RuleSet(
        cast_rule=not args.no_cast_rule,
        eqrec_rule=not args.no_eqrec_rule,
        j_rule=args.enable_j,
        proof_irrelevance=not args.no_proof_irrelevance,
        fuel=_resolve_fuel(args),
    )


class _Usage(Exception):
    pass


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc}")


def _cmd_check(args: argparse.Namespace) -> int:
    rules = _ruleset(args)
    program = parse_program(_read_source(args.path))
    _, results = elaborate(program, rules, run_reduce=False)
    for res in results:
        if res.kind == "check":
            print(f"{pretty(res.term)} : {pretty(res.type_)}")
    return EXIT_OK


def _cmd_reduce(args: argparse.Namespace) -> int:
    rules = _ruleset(args)
    program = parse_program(_read_source(args.path))
    _, results = elaborate(program, rules, reduce_strategy=args.strategy)
    statuses = []
    for res in results:
        if res.kind != "reduce":
            continue
        trace = res.trace
        statuses.append(trace.status)
        if args.trace == "text":
            print(trace_to_text(trace))
        elif args.trace == "json":
            print("\n".join(trace_to_json_lines(trace)))
        else:
            print(trace.status_line())
    if CYCLE_DETECTED in statuses:
        return EXIT_CYCLE
    if FUEL_EXHAUSTED in statuses:
        return EXIT_FUEL
    return EXIT_OK


def _cmd_corpus(args: argparse.Namespace) -> int:
    overrides = {
        "cast_rule": not args.no_cast_rule,
        "eqrec_rule": not args.no_eqrec_rule,
        "proof_irrelevance": not args.no_proof_irrelevance,
    }
    if args.enable_j:
        overrides["j_rule"] = True
    fuel = _resolve_fuel(args)
    names = (args.case,) if args.case else None
    ok = True
    for report in corpus_mod.run_all(overrides, names, fuel):
        verdict = "PASS" if report.passed else "FAIL"
        ok = ok and report.passed
        print(f"{verdict} {report.name} [{report.ruleset}]")
        for desc, entry_ok in report.entries:
            mark = "ok" if entry_ok else ("skip" if entry_ok is None else "FAIL")
            print(f"  {mark:4} {desc}")
    return EXIT_OK if ok else EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; preserve both
        return int(exc.code or 0)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "reduce":
            return _cmd_reduce(args)
        return _cmd_corpus(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except TypeCheckError as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FuelExhausted as exc:
        print(f"fuel exhausted: {exc}", file=sys.stderr)
        return EXIT_FUEL
    except (ScopeError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())

"""Command line front end: ``olp compile|ground|solve|verify``.

Exit codes: 0 success (at least one answer set, or every check passed),
1 no answer set (or a check failed), 2 usage or input error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import corpus as corpus_mod
from .compiler import CompiledProgram, compile_program, preferred_from_compiled
from .core import CONTROL, BudgetExceeded, OlpError, OrderedProgram
from .emit import DIALECTS, emit, emit_answer_sets
from .grounder import ground
from .parser import format_program, parse_program
from .setpref import compile_sets, memberships
from .solver import DEFAULT_MAX_UNDECIDED, answer_sets
from .verify import ALL_CHECKS, run_checks

EXIT_OK, EXIT_EMPTY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def load(path: str) -> OrderedProgram:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return ground(parse_program(text))


def _has_sets(p: OrderedProgram) -> bool:
    return bool(memberships(p))


def _without_sets(p: OrderedProgram) -> OrderedProgram:
    return OrderedProgram(r for r in p if r.head is None or r.head.atom.kind != CONTROL)


def compile_any(p: OrderedProgram, gating: str = "any") -> CompiledProgram:
    return compile_sets(p, gating=gating) if _has_sets(p) else compile_program(p)


def _cmd_compile(args) -> int:
    cp = compile_any(load(args.file), args.gating)
    text = emit(cp.program, args.dialect)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_ground(args) -> int:
    sys.stdout.write(format_program(load(args.file)))
    return EXIT_OK


def _cmd_solve(args) -> int:
    p = load(args.file)
    if args.mode == "preferred":
        xss = preferred_from_compiled(compile_any(p, args.gating), args.budget)
    else:
        xss = answer_sets(_without_sets(p), args.budget)
    if args.max is not None:
        xss = xss[: args.max]
    sys.stdout.write(emit_answer_sets(xss))
    return EXIT_OK if xss else EXIT_EMPTY


def _verify_lines(job) -> list[str]:
    label, text, checks, budget = job
    p = parse_program(text, unknown_names="ignore")
    return [r.to_json() + "\n" for r in run_checks(p, checks, seed=label, max_undecided=budget)]


def _cmd_verify(args) -> int:
    checks = tuple(c.strip() for c in args.checks.split(",")) if args.checks else ALL_CHECKS
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown checks: {', '.join(unknown)}")
    jobs = []
    if args.file:
        jobs.append((args.seed, format_program(load(args.file)), checks, args.budget))
    if args.corpus:
        if args.kind == "sweep":
            source = corpus_mod.exhaustive_sweep()
            source = (item for i, item in zip(range(args.corpus), source))
        else:
            source = corpus_mod.corpus(args.seed, args.corpus, args.kind)
        jobs += [(label, format_program(p), checks, args.budget) for label, p in source]
    if not jobs:
        raise argparse.ArgumentTypeError("verify needs FILE or --corpus N")
    failed = False
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_lines, jobs, chunksize=16))
    else:
        results = map(_verify_lines, jobs)
    for lines in results:
        for line in lines:
            failed |= '"verdict": "fail"' in line
            sys.stdout.write(line)
    return EXIT_EMPTY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="olp", description="Ordered logic programs: compile, ground, solve, verify.")
    sub = ap.add_subparsers(dest="command", required=True)

    def budget(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_MAX_UNDECIDED,
                        help="max undecided weakly negated literals before giving up (default %(default)s)")

    def gating(sp):
        sp.add_argument("--gating", choices=("any", "all"), default="any",
                        help="set gating: a member waits for one (any) or every (all) containing set")

    sp = sub.add_parser("compile", help="write the compiled program")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.add_argument("--dialect", choices=DIALECTS, default="native")
    gating(sp)
    sp.set_defaults(run=_cmd_compile)

    sp = sub.add_parser("ground", help="write the ground instantiation")
    sp.add_argument("file")
    sp.set_defaults(run=_cmd_ground)

    sp = sub.add_parser("solve", help="print answer sets, one per line")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=("regular", "preferred"), default="regular")
    sp.add_argument("--max", type=int, help="print at most N answer sets")
    budget(sp)
    gating(sp)
    sp.set_defaults(run=_cmd_solve)

    sp = sub.add_parser("verify", help="run property checks, one JSON record per check")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--checks", help=f"comma separated subset of: {', '.join(ALL_CHECKS)}")
    sp.add_argument("--seed", default="0")
    sp.add_argument("--corpus", type=int, default=0, help="also check N generated programs")
    sp.add_argument("--kind", choices=("static", "dynamic", "plain", "sweep"), default="static")
    sp.add_argument("--jobs", type=int, default=1)
    budget(sp)
    sp.set_defaults(run=_cmd_verify)
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = args.run(args)
        for w in caught:
            print(f"olp: warning: {w.message}", file=sys.stderr)
        return code
    except BudgetExceeded as e:
        print(f"olp: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (OlpError, OSError, ValueError, argparse.ArgumentTypeError) as e:
        print(f"olp: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())

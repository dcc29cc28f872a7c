"""Command-line front end: compile, simulate, decode, check, verify.

Exit codes are a stable contract:

* 0: success (for ``check``: verdict True)
* 1: verdict False
* 2: parse error, malformed input, or bad bound/depth
* 3: machine validation failure
* 4: simulation reached the error state
* 5: verdict Unknown

Verdict and report payloads are deterministic; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .cgs import CgsError, cgs_to_json, load_cgs, save_cgs
from .comptree import levels_to_json, to_dot
from .formulas import FormulaSyntaxError, parse_formula
from .mc import BoundTooSmall, Truth, check
from .reduction import (
    RIGHTMOST_LABELS,
    S_ERR,
    build_cgs,
    decode_level,
    simulation_tree,
    verify_construction,
)
from .turing import MalformedMachine, load_tm

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_BAD_MACHINE = 3
EXIT_ERR_STATE = 4
EXIT_UNKNOWN = 5


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_machine(path):
    try:
        return load_tm(path)
    except FileNotFoundError:
        raise _Failure(EXIT_PARSE, f"no such file: {path}") from None
    except MalformedMachine as exc:
        # unreadable documents are parse errors; machines that parse but
        # fail validation are rejected with their own code
        if "not valid JSON" in str(exc) or "malformed machine document" in str(exc):
            raise _Failure(EXIT_PARSE, str(exc)) from exc
        raise _Failure(EXIT_BAD_MACHINE, str(exc)) from exc


def cmd_reduce(args) -> int:
    m = _load_machine(args.machine)
    rc = build_cgs(m)
    for warning in rc.lint:
        print(f"warning: {warning}", file=sys.stderr)
    if args.output:
        save_cgs(rc.cgs, args.output)
    else:
        json.dump(cgs_to_json(rc.cgs), sys.stdout, indent=2)
        print()
    print(f"states: {len(rc.cgs.states)}")
    print(f"actions: {len(rc.cgs.actions)}")
    print(f"transitions: {len(rc.cgs.delta)}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    m = _load_machine(args.machine)
    if args.depth < 0:
        print("error: depth must be non-negative", file=sys.stderr)
        return EXIT_PARSE
    rc = build_cgs(m)
    t = simulation_tree(rc, args.depth)
    if args.format == "dot":
        out = to_dot(rc.cgs, t)
    else:
        out = json.dumps({"levels": levels_to_json(t, RIGHTMOST_LABELS)}, indent=2) + "\n"
    decoded = []
    if args.decode:
        for n in range(3, args.depth + 1, 2):
            if len(t.nodes_at_depth(n)) == n + 1:
                word = decode_level(rc, t, n)
                if all(x != S_ERR for x in word):
                    decoded.append((n, "".join(word)))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
        prefix = ""
    else:
        sys.stdout.write(out)
        # keep stdout parseable when the tree itself went there
        prefix = "// " if args.format == "dot" else ""
    for n, word in decoded:
        print(f"{prefix}level {n}: {word}")
    err_levels = [
        n
        for n in range(args.depth + 1)
        if any(t.label(v) == S_ERR for v in t.nodes_at_depth(n))
    ]
    if err_levels:
        print(f"error state reached at level {err_levels[0]}", file=sys.stderr)
        return EXIT_ERR_STATE
    return EXIT_OK


def cmd_check(args) -> int:
    if args.job:
        try:
            with open(args.job, "r", encoding="utf-8") as fh:
                job = json.load(fh)
            cgs_path = job["cgs"]
            state = job["state"]
            formula_text = job["formula"]
            bound = int(job["bound"])
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            print(f"error: bad job file: {exc}", file=sys.stderr)
            return EXIT_PARSE
    else:
        if not (args.cgs and args.state and args.formula and args.bound is not None):
            print(
                "error: need a game structure, --state, --formula and --bound "
                "(or a --job file)",
                file=sys.stderr,
            )
            return EXIT_PARSE
        cgs_path, state, formula_text, bound = args.cgs, args.state, args.formula, args.bound
    try:
        g = load_cgs(cgs_path, allow_invalid=args.allow_invalid)
    except FileNotFoundError:
        print(f"error: no such file: {cgs_path}", file=sys.stderr)
        return EXIT_PARSE
    except CgsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        f = parse_formula(formula_text)
    except FormulaSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    started = time.perf_counter()
    try:
        verdict = check(g, state, f, bound)
    except (BoundTooSmall, CgsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    elapsed = time.perf_counter() - started
    print(json.dumps(verdict.to_json(), indent=2))
    print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    if verdict.value is Truth.TRUE:
        return EXIT_OK
    if verdict.value is Truth.FALSE:
        return EXIT_FALSE
    return EXIT_UNKNOWN


def cmd_verify_claims(args) -> int:
    m = _load_machine(args.machine)
    if args.depth < 3:
        print("error: depth must be at least 3", file=sys.stderr)
        return EXIT_PARSE
    rc = build_cgs(m)
    report = verify_construction(rc, args.depth)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(f"{'claim':>5}  {'sub':>5}  {'level':>5}  {'pass':>5}  detail")
        for e in report.entries:
            lvl = "-" if e.level is None else str(e.level)
            print(
                f"{e.claim:>5}  {e.subclaim:>5}  {lvl:>5}  "
                f"{'ok' if e.passed else 'FAIL':>5}  {e.detail}"
            )
        good = sum(1 for e in report.entries if e.passed)
        print(f"{good}/{len(report.entries)} checks passed to depth {report.depth}")
    return EXIT_OK if report.all_pass else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atlir",
        description=(
            "Workbench for bounded ATL model checking under imperfect "
            "information and perfect recall, with a Turing-machine-to-game "
            "compiler."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="compile a machine into its game structure")
    p.add_argument("machine", help="machine file (JSON)")
    p.add_argument("-o", "--output", help="write the game structure here")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("simulate", help="saturate the simulation tree and export it")
    p.add_argument("machine", help="machine file (JSON)")
    p.add_argument("-d", "--depth", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--decode", action="store_true", help="print decoded odd levels")
    p.add_argument("-o", "--output", help="write the tree here instead of stdout")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("check", help="check a formula on a game structure")
    p.add_argument("cgs", nargs="?", help="game structure file (JSON)")
    p.add_argument("--state", help="state to check at")
    p.add_argument("--formula", help="formula text, e.g. '<<1,2>> G ok'")
    p.add_argument("-b", "--bound", type=int, help="search depth")
    p.add_argument("--job", help="checking-job file {cgs, state, formula, bound}")
    p.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker budget for the strategy search (evaluation is currently "
        "sequential; verdicts do not depend on this)",
    )
    p.add_argument(
        "--allow-invalid",
        action="store_true",
        help="load structures that fail validation anyway",
    )
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser(
        "verify-claims", help="machine-check the compiled game's structural laws"
    )
    p.add_argument("machine", help="machine file (JSON)")
    p.add_argument("-d", "--depth", type=int, required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=cmd_verify_claims)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    raise SystemExit(main())

"""Command line interface: ``kslim analyze | verify | example``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 input that fails
validation (or, for ``verify``, any failed check).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .checks import SCOPES, run_suite
from .forge import available_names, example
from .hodge import InvalidStructureError, validate_pmhs_k3
from .problem import (DEFAULT_ZETA_TERMS, ProblemFile, ProblemParseError, dumps, load_problem,
                      serialize_problem)
from .report import analyze, render_text, validation_dict

EXIT_OK, EXIT_PARSE, EXIT_INVALID = 0, 1, 2


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    try:
        if args.example:
            problem = ProblemFile(example(args.example))
        elif args.file:
            problem = load_problem(args.file)
        else:
            print("error: give a problem file or --example NAME", file=sys.stderr)
            return EXIT_PARSE
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_PARSE
    except ProblemParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidStructureError as exc:
        print(f"invalid structure: {exc}", file=sys.stderr)
        return EXIT_INVALID
    overrides = {}
    if args.zeta_terms is not None:
        overrides["zeta_terms"] = args.zeta_terms
    if args.neron_components is not None:
        overrides["neron_components"] = args.neron_components
    if overrides:
        problem = ProblemFile(problem.structure,
                              overrides.get("neron_components", problem.neron_components),
                              overrides.get("zeta_terms", problem.zeta_terms))
    try:
        report = analyze(problem, checks=not args.no_checks)
    except InvalidStructureError as exc:
        rep = exc.report or validate_pmhs_k3(problem.structure)
        print(f"invalid structure: {exc}", file=sys.stderr)
        for c in rep.failures():
            print(f"  ({c.axiom}) {c.name}: {c.detail}", file=sys.stderr)
        if args.out:
            Path(args.out).write_text(dumps({"error": str(exc), "validation": validation_dict(rep)}))
        return EXIT_INVALID
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        sys.stdout.write(render_text(report))
    if args.out:
        Path(args.out).write_text(dumps(report))
    failed = [k for k, ok in report.get("verification", {}).items() if not ok]
    return EXIT_INVALID if failed else EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.scope, args.seed, args.naive_monodromy, args.conjugates)
    for c in results:
        status = "PASS" if c.passed else "FAIL"
        detail = f" ({c.detail})" if c.detail else ""
        print(f"{status} {c.scope}: {c.name}{detail}")
    failed = sum(not c.passed for c in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_INVALID if failed else EXIT_OK


def cmd_example(args) -> int:
    try:
        m = example(args.name)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_PARSE
    _write(serialize_problem(ProblemFile(m)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kslim", description="Exact Kuga-Satake limit mixed Hodge structures and degeneration invariants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the full pipeline on a problem file or built-in example")
    p.add_argument("file", nargs="?", help="JSON problem file")
    p.add_argument("--example", metavar="NAME", help="built-in example, e.g. EX-II.4 or II:4")
    p.add_argument("--zeta-terms", type=int, metavar="K", help=f"zeta coefficients to list (default {DEFAULT_ZETA_TERMS})")
    p.add_argument("--neron-components", type=int, metavar="N", help="number of Neron components (default symbolic N)")
    p.add_argument("--out", metavar="FILE", help="write the JSON report to FILE")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of the text summary")
    p.add_argument("--no-checks", action="store_true", help="skip the per-structure verification matrix")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--seed", type=int, default=0, help="seed for random vectors and conjugates (default 0)")
    p.add_argument("--scope", choices=("all",) + SCOPES, default="all")
    p.add_argument("--naive-monodromy", action="store_true",
                   help="also check that the naive Clifford operator differs from T'")
    p.add_argument("--conjugates", type=int, default=3, help="random conjugates per type (default 3)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example", help="write a built-in example as a problem file")
    p.add_argument("name", help=f"one of {', '.join(available_names())}")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for flag in ("zeta_terms", "neron_components"):
        value = getattr(args, flag, None)
        if value is not None and value < 1:
            print(f"error: --{flag.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_PARSE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

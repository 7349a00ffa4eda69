"""Command-line front end.

    supalg pbw EXPR                 PBW normal form in U(gl(m|n))
    supalg check SUITE              run a verification suite (or ``all``)
    supalg reconstruct SECTION      global function from a split section of GL(1|1)
    supalg convolve DIST DIST       convolution of two distributions

Exit status: 0 when everything passed, 1 when a check failed, 2 for usage,
parse or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .expr import ParseError, parse_u

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(args, text: str, payload) -> None:
    if args.out:
        Path(args.out).write_text(_dump(payload), encoding="utf-8")
    sys.stdout.write(_dump(payload) if args.format == "json" else text + "\n")


def _load_json(source: str):
    """JSON from a file path, '-' for stdin, or an inline JSON literal."""
    try:
        if source == "-":
            return json.load(sys.stdin)
        if source.lstrip().startswith(("{", "[")):
            return json.loads(source)
        return json.loads(Path(source).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None


def _group(args):
    from .suites import parse_group
    if args.group is None:
        return None
    return parse_group(args.group)


# -- commands ------------------------------------------------------------------

def cmd_pbw(args) -> int:
    from .enveloping import UAlgebra
    from .liesuper import build_gl
    m, n = _group(args) or (1, 1)
    A = UAlgebra(build_gl(m, n))
    u = parse_u(args.expr, A)
    payload = {"group": f"gl({m}|{n})", "input": args.expr,
               "normal_form": str(u), "terms": u.to_json()}
    _emit(args, str(u), payload)
    return EXIT_OK


def cmd_check(args) -> int:
    from .suites import Config, render_text, run_suite
    cfg = Config(group=_group(args), degree_bound=args.degree_bound, seed=args.seed)
    start = time.perf_counter()
    report = run_suite(args.suite, cfg)
    elapsed = time.perf_counter() - start
    _emit(args, render_text(report), report)
    # wall time stays out of the report so reports are reproducible byte for byte
    print(f"wall time: {elapsed:.2f} s", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_reconstruct(args) -> int:
    from . import shcp
    from .superpoly import format_poly, poly_to_json
    if args.group not in (None, "gl(1|1)", "1,1", "1|1"):
        raise InputError("reconstruction is available for gl(1|1) only")
    P = shcp.gl11_shcp()
    try:
        section = shcp.SHCPSection.from_json(P, _load_json(args.section))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed section: {exc}") from None
    solve = shcp.reconstruct if args.via == "eta" else shcp.sections_to_coordinates
    s = solve(section)
    payload = {"section": section.to_json(), "via": args.via,
               "polynomial": format_poly(s), "terms": poly_to_json(s)}
    _emit(args, format_poly(s), payload)
    return EXIT_OK


def cmd_convolve(args) -> int:
    from .distributions import Distribution, convolve, gl_hopf
    m, n = _group(args) or (1, 1)
    H = gl_hopf(m, n)
    try:
        a = Distribution.from_json(H, _load_json(args.first))
        b = Distribution.from_json(H, _load_json(args.second))
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed distribution: {exc}") from None
    c = convolve(a, b)
    _emit(args, repr(c), {"group": f"gl({m}|{n})", "result": c.to_json()})
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default=None, help="gl(m|n), e.g. gl(2|1); default gl(1|1)")
    common.add_argument("--degree-bound", type=int, default=4,
                        help="pairing degree bound for distribution checks (default 4)")
    common.add_argument("--seed", type=int, default=0, help="seed for all random samples")
    common.add_argument("--out", default=None, help="also write the JSON result to this file")
    common.add_argument("--format", choices=("json", "text"), default="text")

    parser = argparse.ArgumentParser(prog="supalg",
                                     description="Exact computations with Lie supergroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pbw", parents=[common], help="PBW normal form of a U(g) expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_pbw)

    p = sub.add_parser("check", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reconstruct", parents=[common],
                       help="global function from a split section (JSON file, '-' or inline)")
    p.add_argument("section")
    p.add_argument("--via", choices=("eta", "matrix"), default="eta",
                   help="invert eta* (default) or the identification matching the matrix coproduct")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("convolve", parents=[common], help="convolution of two distributions")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_convolve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.degree_bound < 1:
        parser.error("--degree-bound must be positive")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

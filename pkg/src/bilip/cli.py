"""Command line interface.

Exit codes: 0 certified Lipschitz, 1 certified not Lipschitz, 2 inconclusive,
3 witness rejected by ``verify-witness``, 64 usage error, 65 malformed input,
66 unreadable input file.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys

from . import __version__
from .classify import family_e1, family_e2
from .lipschitz import EXIT_CODES, Verdict
from .parsing import Options, ParseError, ProblemFile, parse_coefficients, parse_curve, parse_problem, serialize_problem
from .poly import ORDER_KINDS
from .report import check_curve, load_report, render_text, run_analysis
from .verify import CertificateError, verify_certificate

EXIT_REJECTED = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_NOINPUT = 66

log = logging.getLogger("bilip")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with INCONCLUSIVE.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_analysis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
    p.add_argument("--budget-exp", type=int, metavar="N", help="largest t-exponent in the curve search")
    p.add_argument("--budget-coeffs", metavar="LIST", help="comma-separated curve coefficients, must include 0")
    p.add_argument("--budget-support", type=int, metavar="N",
                   help="largest number of nonzero curve components tried")
    p.add_argument("--order", choices=ORDER_KINDS, help="monomial order for Groebner computations")
    p.add_argument("--no-param-double", action="store_true",
                   help="leave the parameter's own double u - u' out of the unfolding doubles ideal")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bilip", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="decide whether the canonical vector field is Lipschitz")
    a.add_argument("file")
    _add_analysis_flags(a)

    c = sub.add_parser("check-curve", help="pull both doubles ideals back along one curve")
    c.add_argument("file")
    c.add_argument("--curve", required=True, help="e.g. \"w=2t, w'=t\"; unlisted coordinates are 0")
    c.add_argument("--json", action="store_true")
    c.add_argument("--no-param-double", action="store_true")

    k = sub.add_parser("catalog", help="analyze (or emit) a built-in normal-form family")
    k.add_argument("family", choices=("e1", "e2"))
    k.add_argument("--l", type=int, default=2, help="w-exponent of family e1")
    k.add_argument("--k", type=int, default=2)
    k.add_argument("--param", default="u")
    k.add_argument("--emit-file", action="store_true", help="print the problem file instead of analyzing it")
    _add_analysis_flags(k)

    v = sub.add_parser("verify-witness", help="re-check the certificate in a JSON report")
    v.add_argument("report")
    return parser


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from exc


def _apply_overrides(pf: ProblemFile, args) -> ProblemFile:
    o = pf.options
    budget = o.budget
    changes = {}
    if getattr(args, "budget_exp", None) is not None:
        changes["max_exponent"] = args.budget_exp
    if getattr(args, "budget_support", None) is not None:
        changes["max_support"] = args.budget_support
    if getattr(args, "budget_coeffs", None):
        changes["coefficients"] = parse_coefficients(args.budget_coeffs)
    try:
        budget = dataclasses.replace(budget, **changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    order = getattr(args, "order", None) or o.order
    include = o.include_param_double and not getattr(args, "no_param_double", False)
    return dataclasses.replace(pf, options=Options(order, budget, include))


def _emit(d: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(d, indent=2, sort_keys=True))
    else:
        sys.stdout.write(render_text(d))


def _analyze(pf: ProblemFile, args) -> int:
    report = run_analysis(_apply_overrides(pf, args))
    _emit(report.to_dict(), args.json)
    return EXIT_CODES[report.verdict]


def cmd_analyze(args) -> int:
    return _analyze(parse_problem(_read(args.file)), args)


def cmd_catalog(args) -> int:
    if args.family == "e1":
        F, theta = family_e1(args.l, args.k)
    else:
        F, theta = family_e2(args.k)
    pf = ProblemFile(tuple(F.context.names), args.param, F, theta)
    if args.emit_file:
        sys.stdout.write(serialize_problem(_apply_overrides(pf, args)))
        return 0
    return _analyze(pf, args)


def cmd_check_curve(args) -> int:
    pf = _apply_overrides(parse_problem(_read(args.file)), args)
    curve = parse_curve(args.curve, pf.unfolding().doubled.doubled)
    result = check_curve(pf, curve)
    _emit(result, args.json)
    return EXIT_CODES[Verdict(result["verdict"])]


def cmd_verify(args) -> int:
    try:
        data = json.loads(_read(args.report))
    except json.JSONDecodeError as exc:
        raise ParseError(f"report is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if "witness" not in data:
        print("rejected: report carries no certificate")
        return EXIT_REJECTED
    try:
        pf, cert = load_report(data)
        verify_certificate(pf.unfolding(), cert)
    except (CertificateError, ValueError, KeyError) as exc:
        print(f"rejected: {exc}")
        return EXIT_REJECTED
    print(f"verified: {cert.verdict}")
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "catalog": cmd_catalog,
    "check-curve": cmd_check_curve,
    "verify-witness": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"bilip: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except ParseError as exc:
        print(f"bilip: parse error: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except UsageError as exc:
        print(f"bilip: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"bilip: {exc}", file=sys.stderr)
        return EXIT_DATAERR


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: expression operations, suites and reports.

Exit codes: 0 success / all checks pass, 1 at least one check failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import corep, galois, gns
from .algebras import adtq, at2, at2q, auq2, az2, build_finite_quotient
from .errors import QdtError
from .exprs import parse_element
from .report import Report
from .scalars import CyclotomicMode
from .suites import SUITE_NAMES, SuiteParams, run_suite

_ALGEBRAS = {"AUq2": auq2, "ADTq": adtq, "AT2": at2, "AT2q": at2q, "AZ2": az2}


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--algebra", default="ADTq", help="target algebra tag")
    parser.add_argument("--max-deg", type=int, default=4, dest="max_deg")
    parser.add_argument("--range", type=int, default=3, dest="exp_range")
    parser.add_argument("--window", type=int, default=6)
    parser.add_argument("--q-theta", type=float, default=0.31, dest="theta")
    parser.add_argument("--q-root", type=int, default=4, dest="q_root")
    parser.add_argument(
        "--convention", choices=("printed", "corrected"), default="corrected"
    )
    parser.add_argument("--report", choices=("text", "json"), default="text")
    parser.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdtorus",
        description="Exact symbolic engine and checks for the quantum double-torus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (
        ("normalize", "normal form of an expression"),
        ("coproduct", "coproduct of an expression"),
        ("antipode", "antipode of an expression"),
        ("star", "involution of an expression"),
        ("haar", "invariant-state value of an expression"),
    ):
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("expression")
        _add_common(cmd)

    cmd = sub.add_parser("character", help="character of an irreducible label")
    cmd.add_argument("label", help="chi(m) | chiz(m) | w(m,n)")
    _add_common(cmd)

    cmd = sub.add_parser("decompose", help="decompose a character into irreducibles")
    cmd.add_argument("expression")
    _add_common(cmd)

    cmd = sub.add_parser("verify", help="run a verification suite")
    cmd.add_argument("suite", choices=SUITE_NAMES)
    cmd.add_argument("--quotient-n", type=int, default=2, dest="quotient_n")
    _add_common(cmd)

    cmd = sub.add_parser("gns", help="lattice representation checks and values")
    cmd.add_argument("--norm", help="estimate the operator norm of an expression")
    cmd.add_argument("--expect", help="vacuum expectation of an expression")
    _add_common(cmd)

    cmd = sub.add_parser("fdquot", help="build a finite root-of-unity quotient")
    cmd.add_argument("n", type=int)
    _add_common(cmd)
    return parser


def _params(args) -> SuiteParams:
    return SuiteParams(
        algebra=args.algebra,
        max_deg=args.max_deg,
        exp_range=args.exp_range,
        window=args.window,
        theta=args.theta,
        q_root=args.q_root,
        quotient_n=getattr(args, "quotient_n", 2),
        convention=args.convention,
        jobs=args.jobs,
    )


def _emit_value(args, label: str, value) -> int:
    if args.report == "json":
        payload = {
            "command": args.command,
            "params": _params(args).as_dict(),
            "cleaving_convention": galois.convention_report(args.convention),
            label: str(value),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(value)
    return 0


def _emit_report(args, report: Report) -> int:
    print(report.to_json() if args.report == "json" else report.to_text())
    return 0 if report.ok else 1


_LABEL = re.compile(r"^(chi|chiz|w)\((-?\d+)(?:,(\d+))?\)$")


def _corep_by_label(label: str) -> corep.CorepMatrix:
    m = _LABEL.match(label.replace(" ", ""))
    if not m:
        raise QdtError(f"bad irreducible label {label!r}")
    kind, first, second = m.group(1), int(m.group(2)), m.group(3)
    if kind == "chi":
        return corep.chi(first)
    if kind == "chiz":
        return corep.chiz(first)
    if second is None:
        raise QdtError("the two-dimensional family needs w(m,n)")
    return corep.w_rep(first, int(second))


def dispatch(args) -> int:
    if args.command in ("normalize", "coproduct", "antipode", "star", "haar"):
        algebra = _ALGEBRAS.get(args.algebra)
        if algebra is None:
            raise QdtError(f"unknown algebra {args.algebra!r}")
        element = parse_element(args.expression, algebra())
        if args.command == "normalize":
            return _emit_value(args, "result", element)
        if args.command == "coproduct":
            return _emit_value(args, "result", element.coproduct())
        if args.command == "antipode":
            return _emit_value(args, "result", element.antipode())
        if args.command == "star":
            return _emit_value(args, "result", element.star())
        from .hopf import haar

        return _emit_value(args, "result", haar(element))

    if args.command == "character":
        w = _corep_by_label(args.label)
        return _emit_value(args, "character", corep.character_of(w))

    if args.command == "decompose":
        element = parse_element(args.expression, adtq())
        families = corep.standard_families(args.exp_range, args.exp_range)
        mults = corep.decompose_character(element, families)
        return _emit_value(args, "multiplicities", mults)

    if args.command == "verify":
        return _emit_report(args, run_suite(args.suite, _params(args)))

    if args.command == "gns":
        report = run_suite("gns", _params(args))
        extra: dict[str, str] = {}
        if args.norm:
            value = gns.estimate_operator_norm(
                parse_element(args.norm, adtq()), args.window, args.theta
            )
            extra[f"norm({args.norm})"] = f"{value:.12g}"
        if args.expect:
            value = gns.gns_expectation(
                parse_element(args.expect, adtq()), args.window, args.theta
            )
            extra[f"expectation({args.expect})"] = f"{value:.12g}"
        code = _emit_report(args, report)
        for key, value in extra.items():
            print(f"{key} = {value}")
        return code

    if args.command == "fdquot":
        params = _params(args)
        params.quotient_n = args.n
        algebra = build_finite_quotient(
            args.n, CyclotomicMode(args.q_root, primitive=True)
        )
        report = run_suite("fdquot", params)
        code = _emit_report(args, report)
        print(f"dimension = {algebra.dimension}")
        return code

    raise QdtError(f"unhandled command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return dispatch(args)
    except QdtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

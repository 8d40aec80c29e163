"""Command-line entry point: ``liftkit {lift,verify,gen-gu,gen-hard,rpp}``.

Reports go to stdout as sorted-key JSON, so identical inputs give
byte-identical output. ``--human`` switches to a readable summary stamped
with the current time. Exit codes:

    0  success (valid / facet / command completed)
    2  usage error
    3  inequality violated
    4  valid but not a facet
    5  parse or validation error
    6  infeasible up-lifting subproblem
    7  main solver and brute-force oracle disagree
    8  reduction produced an out-of-range coefficient
    9  instance exceeds the enumeration limit
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone

from . import io
from .errors import (
    InfeasibleLift,
    ParseError,
    TooLarge,
    UnexpectedCoefficient,
    ValidationError,
)
from .gu import build_gu_task, expected_gu_coefficients
from .hardness import (
    Decided,
    build_hard_instance,
    decide_rpp_via_lifting,
    predicted_hard_coefficients,
    preprocess_rpp,
    solve_rpp,
    validate_rpp,
)
from .knapsack import DEFAULT_LIMIT, enumeration_limit
from .lifting import sequential_lift
from .verify import brute_force_lift_oracle, check_facet, check_validity

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATED = 3
EXIT_NOT_FACET = 4
EXIT_VALIDATION = 5
EXIT_INFEASIBLE = 6
EXIT_ORACLE_MISMATCH = 7
EXIT_UNEXPECTED = 8
EXIT_TOO_LARGE = 9


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _limit(args) -> int:
    if args.limit is None:
        return enumeration_limit()
    if args.limit > DEFAULT_LIMIT:
        print(
            f"warning: enumeration limit raised to {args.limit}; "
            f"brute force costs 2^n",
            file=sys.stderr,
        )
    return args.limit


def _emit(args, doc: dict, human: str) -> None:
    if getattr(args, "human", False):
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        sys.stdout.write(f"# {stamp}\n{human}\n")
    else:
        sys.stdout.write(io.dumps(doc))


def _format_ineq(coeffs, rhs) -> str:
    terms = [f"{c} x{i}" for i, c in enumerate(coeffs, start=1) if c]
    return " + ".join(terms or ["0"]) + f" <= {rhs}"


def cmd_lift(args) -> int:
    task = io.load_instance(args.file)
    policy = "skip" if args.fix_infeasible_to_zero else "raise"
    lci = sequential_lift(task, on_infeasible=policy)
    doc = io.lci_to_doc(lci)
    code = EXIT_OK
    if args.oracle:
        oracle = brute_force_lift_oracle(task, _limit(args)) if not lci.skipped else None
        agree = oracle is not None and oracle.coeffs == lci.coeffs
        doc["oracle"] = {"agrees": agree}
        if oracle is None:
            doc["oracle"]["note"] = "oracle skipped: infeasible lifts were reported"
        elif not agree:
            doc["oracle"]["coeffs"] = [str(c) for c in oracle.coeffs]
            code = EXIT_ORACLE_MISMATCH
    human = _format_ineq(lci.coeffs, lci.rhs)
    if lci.skipped:
        human += f"\nfixed to zero (infeasible up-lift): {sorted(lci.skipped)}"
    _emit(args, doc, human)
    return code


def cmd_verify(args) -> int:
    ks = io.load_knapsack(args.file)
    ineq = io.load_inequality(args.ineq)
    limit = _limit(args)
    if args.facet:
        report = check_facet(ks, ineq, limit)
        doc = io.facet_to_doc(report)
        _emit(args, doc, f"valid={report.valid} facet={report.is_facet} "
                          f"tight={report.tight_count} dim={report.tight_affine_dim}/{report.dimension}")
        if not report.valid:
            return EXIT_VIOLATED
        return EXIT_OK if report.is_facet else EXIT_NOT_FACET
    result = check_validity(ks, ineq, limit)
    doc = {"valid": result.valid}
    if not result.valid:
        doc["witness"] = list(result.witness)
    _emit(args, doc, "Valid" if result.valid else f"Violated at {list(result.witness)}")
    return EXIT_OK if result.valid else EXIT_VIOLATED


def cmd_gen_gu(args) -> int:
    if args.r < 1:
        raise ValidationError("--r must be >= 1")
    task = build_gu_task(args.r)
    doc = io.task_to_doc(task)
    if args.expected:
        doc["expected"] = {str(i): str(c) for i, c in expected_gu_coefficients(args.r).items()}
    _emit(args, doc, f"exponential family r={args.r}: a={list(task.ks.a)} b={task.ks.b}")
    return EXIT_OK


def cmd_gen_hard(args) -> int:
    inst = validate_rpp(io.load_rpp(args.rpp))
    pre = preprocess_rpp(inst)
    if isinstance(pre, Decided):
        raise ValidationError(
            f"omega_{pre.index} >= lam: preprocessing already answers "
            f"{'yes' if pre.answer else 'no'}; no hard instance is built"
        )
    hi = build_hard_instance(pre)
    doc = io.task_to_doc(hi.task)
    doc["r"] = hi.r
    doc["lambda"] = str(hi.lam)
    if args.predict:
        answer = solve_rpp(inst).answer
        doc["predicted"] = {
            str(i): str(c) for i, c in predicted_hard_coefficients(hi, answer).items()
        }
        doc["rpp_answer"] = "yes" if answer else "no"
    _emit(args, doc, f"hard instance n={hi.n} r={hi.r} lambda={hi.lam} b={hi.task.ks.b}")
    return EXIT_OK


def cmd_rpp(args) -> int:
    inst = validate_rpp(io.load_rpp(args.file))
    if args.action == "solve":
        sol = solve_rpp(inst)
        doc = {"answer": "yes" if sol.answer else "no"}
        if sol.answer:
            doc["witness"] = list(sol.witness)
        _emit(args, doc, doc["answer"])
        return EXIT_OK
    dec = decide_rpp_via_lifting(inst)
    doc = {"answer": "yes" if dec.answer else "no", "decided_by": dec.decided_by}
    human = doc["answer"]
    if dec.beta_n is not None:
        doc["beta_n"] = str(dec.beta_n)
        doc["n"] = dec.hard.n
        human += f" (beta_{dec.hard.n} = {dec.beta_n})"
    _emit(args, doc, human)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="liftkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, limit=False):
        p.add_argument("--human", action="store_true", help="readable, timestamped output")
        if limit:
            p.add_argument("--limit", type=int, default=None,
                           help=f"enumeration limit on n (default {DEFAULT_LIMIT} or $LIFTKIT_LIMIT)")

    p = sub.add_parser("lift", help="compute the sequential LCI of an instance")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    p.add_argument("--fix-infeasible-to-zero", action="store_true",
                   help="report infeasible up-lifts and leave them at 0 instead of failing")
    common(p, limit=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="check validity (and facetness) of an inequality")
    p.add_argument("file")
    p.add_argument("ineq")
    p.add_argument("--facet", action="store_true")
    common(p, limit=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen-gu", help="emit the exponential-coefficient family instance for r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--expected", action="store_true")
    common(p)
    p.set_defaults(func=cmd_gen_gu)

    p = sub.add_parser("gen-hard", help="emit the lifting instance built from an RPP file")
    p.add_argument("--rpp", required=True)
    p.add_argument("--predict", action="store_true")
    common(p)
    p.set_defaults(func=cmd_gen_hard)

    p = sub.add_parser("rpp", help="decide an RPP instance")
    p.add_argument("action", choices=["solve", "via-lifting"])
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_rpp)
    return parser


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InfeasibleLift as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except UnexpectedCoefficient as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNEXPECTED
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE


def main() -> None:
    sys.exit(run_command())

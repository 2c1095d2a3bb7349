"""Command-line front end.

Subcommands: count, range, table (range with CSV default), verify,
oracle.  Exit codes are a stable contract: 0 success, 1 verification
failure, 2 usage error or unsupported order, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .arith import MAX_ORDER
from .cayley_oracle import canonical_tables
from .errors import PrimeOverflowError, ResourceLimitError, UnsupportedOrderError
from .formulas import GroupCount, count_groups
from .gl_oracle import count_subgroup_classes, enumerate_gl
from .verify import SUITE_NAMES, VerificationReport, run_suite

_MAX_WORKERS = min(8, os.cpu_count() or 1)


def _fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _group_count_dict(gc: GroupCount) -> dict:
    return {
        "n": gc.n,
        "shape": gc.shape.value,
        "count": gc.count,
        "special_case": gc.special_case,
        "terms": [
            {"label": label, "value": _fraction_str(value)}
            for label, value in gc.terms
        ],
    }


def _print_explained(gc: GroupCount) -> None:
    for label, value in gc.terms:
        rendered = str(value) if value.denominator == 1 else _fraction_str(value)
        print(f"  {label} = {rendered}")
    print(f"  total = {gc.count}")


def cmd_count(args) -> int:
    if args.n < 1:
        print(f"error: order must be >= 1, got {args.n}", file=sys.stderr)
        return 2
    if args.n > MAX_ORDER:
        print(f"error: order {args.n} exceeds {MAX_ORDER}", file=sys.stderr)
        return 2
    gc = count_groups(args.n)
    if args.json:
        print(json.dumps(_group_count_dict(gc)))
        return 0
    suffix = ", tabulated special case" if gc.special_case else ""
    print(f"N({gc.n}) = {gc.count}  [shape {gc.shape.value}{suffix}]")
    if args.explain:
        _print_explained(gc)
    return 0


def _range_rows(a: int, b: int):
    """Count every order in [a, b] on a bounded pool, in order."""

    def one(n):
        try:
            return n, count_groups(n), None
        except UnsupportedOrderError as exc:
            return n, None, exc

    with ThreadPoolExecutor(max_workers=_MAX_WORKERS) as pool:
        yield from pool.map(one, range(a, b + 1))


def cmd_range(args) -> int:
    if args.a < 1 or args.a > args.b:
        print(f"error: need 1 <= A <= B, got A={args.a} B={args.b}",
              file=sys.stderr)
        return 2
    if args.b > MAX_ORDER:
        print(f"error: range end {args.b} exceeds {MAX_ORDER}", file=sys.stderr)
        return 2
    rows = []
    unsupported = []
    for n, gc, exc in _range_rows(args.a, args.b):
        if gc is not None:
            rows.append(gc)
        else:
            unsupported.append(n)
    if args.format == "json":
        payload = {"rows": [_group_count_dict(gc) for gc in rows]}
        if not args.skip_unsupported:
            payload["unsupported"] = unsupported
        print(json.dumps(payload))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["n", "shape", "count", "special_case"])
        for gc in rows:
            writer.writerow([gc.n, gc.shape.value, gc.count, gc.special_case])
        sys.stdout.write(out.getvalue())
    else:
        for gc in rows:
            star = " *" if gc.special_case else ""
            print(f"{gc.n:>8}  {gc.shape.value:<8}  {gc.count}{star}")
        if unsupported and not args.skip_unsupported:
            listed = ", ".join(str(n) for n in unsupported)
            print(f"unsupported orders: {listed}")
    return 0


def _report_lines(report: VerificationReport) -> list[str]:
    lines = []
    for case in report.cases:
        if not case.passed:
            lines.append(
                f"  FAIL {case.description}: expected {case.expected!r}, "
                f"got {case.actual!r}"
            )
    status = "ok" if report.passed else "FAILED"
    lines.append(
        f"suite {report.suite}: {report.total - report.failures}/{report.total} "
        f"passed in {report.duration:.2f}s [{status}]"
    )
    return lines


def cmd_verify(args) -> int:
    if args.suite == "all":
        with ThreadPoolExecutor(max_workers=_MAX_WORKERS) as pool:
            reports = list(pool.map(run_suite, SUITE_NAMES))
    else:
        reports = [run_suite(args.suite)]
    if args.json:
        if args.suite == "all":
            print(json.dumps([r.as_dict() for r in reports]))
        else:
            print(json.dumps(reports[0].as_dict()))
    else:
        for report in reports:
            for line in _report_lines(report):
                print(line)
    return 0 if all(r.passed for r in reports) else 1


def cmd_oracle_gl(args) -> int:
    group = enumerate_gl(args.d, args.p, allow_heavy=args.allow_heavy)
    result = count_subgroup_classes(group, args.r)
    print(result.classes)
    if args.witnesses:
        for index, witness in enumerate(result.witnesses, start=1):
            first = next(i for i in witness if i != group.identity_index)
            mat = group.mats[first].tolist()
            print(f"class {index}: elements {witness}, sample matrix {mat}")
    return 0


def cmd_oracle_cayley(args) -> int:
    tables = canonical_tables(args.n, allow_heavy=args.allow_heavy)
    print(len(tables))
    if args.witnesses:
        for index, table in enumerate(tables, start=1):
            print(f"class {index}:")
            for row in table.table:
                print("  " + " ".join(f"{v:>2}" for v in row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupcensus",
        description="Count isomorphism classes of finite groups by order.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="count groups of a single order")
    p_count.add_argument("n", type=int)
    p_count.add_argument("--explain", action="store_true",
                         help="print the term breakdown")
    p_count.add_argument("--json", action="store_true")
    p_count.set_defaults(handler=cmd_count)

    for name, default_format in (("range", "plain"), ("table", "csv")):
        p = sub.add_parser(
            name,
            help="count all supported orders in [A, B]"
            + (" as CSV" if name == "table" else ""),
        )
        p.add_argument("a", type=int, metavar="A")
        p.add_argument("b", type=int, metavar="B")
        p.add_argument("--format", choices=["plain", "csv", "json"],
                       default=default_format)
        p.add_argument("--skip-unsupported", action="store_true")
        p.set_defaults(handler=cmd_range)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=list(SUITE_NAMES) + ["all"])
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(handler=cmd_verify)

    p_oracle = sub.add_parser("oracle", help="run a brute-force oracle")
    oracle_sub = p_oracle.add_subparsers(dest="oracle_kind", required=True)

    p_gl = oracle_sub.add_parser(
        "gl", help="count subgroup classes of GL(d,p) by exhaustion")
    p_gl.add_argument("-d", type=int, required=True, choices=[2, 3])
    p_gl.add_argument("-p", type=int, required=True)
    p_gl.add_argument("-r", type=int, required=True)
    p_gl.add_argument("--witnesses", action="store_true")
    p_gl.add_argument("--allow-heavy", action="store_true")
    p_gl.set_defaults(handler=cmd_oracle_gl)

    p_cayley = oracle_sub.add_parser(
        "cayley", help="count groups of order n by exhaustion")
    p_cayley.add_argument("-n", type=int, required=True)
    p_cayley.add_argument("--witnesses", action="store_true")
    p_cayley.add_argument("--allow-heavy", action="store_true")
    p_cayley.set_defaults(handler=cmd_oracle_cayley)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (UnsupportedOrderError, PrimeOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    raise SystemExit(main())

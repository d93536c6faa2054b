"""``collectives`` command line.

Exit codes: 0 success / all laws pass, 1 domain failure (a law fails, or a
contribution, return or table is invalid), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from ..combinators import INTERFACES
from ..catalog import CORRUPTED_FIXTURES, PRESHEAF_FIXTURES, TABLE_FIXTURES
from ..errors import (
    CapabilityMissing,
    CollectiveError,
    InvalidParameter,
    MalformedDocument,
    ParseError,
    UnknownCollective,
    UnknownDemo,
)
from ..laws import LawConfig, check_all, report_document
from ..values import dumps_canonical
from .demos import DEMOS, run_demo
from .registry import CONSTRUCTORS, build

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# errors that mean the caller asked for something malformed
_USAGE_ERRORS = (ParseError, UnknownCollective, InvalidParameter, CapabilityMissing, MalformedDocument, UnknownDemo)


def _rational(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if q < 0:
        raise argparse.ArgumentTypeError("tolerance must be nonnegative")
    return q


def _nat(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def cmd_list(args, out) -> int:
    catalog = [c for c in CONSTRUCTORS.values() if not c.combinator]
    combos = [c for c in CONSTRUCTORS.values() if c.combinator]
    print("collectives:", file=out)
    for c in catalog:
        print(f"  {c.signature()}\n      {c.summary}", file=out)
    print("combinators:", file=out)
    for c in combos:
        print(f"  {c.signature()}\n      {c.summary}", file=out)
    print("interfaces (for free): " + ", ".join(sorted(INTERFACES)), file=out)
    print("table fixtures: " + ", ".join(sorted(TABLE_FIXTURES)), file=out)
    print("corrupted table fixtures: " + ", ".join(sorted(CORRUPTED_FIXTURES)), file=out)
    print("presheaf fixtures: " + ", ".join(sorted(PRESHEAF_FIXTURES)), file=out)
    print("demos: " + ", ".join(sorted(DEMOS)), file=out)
    return EXIT_OK


def cmd_laws(args, out) -> int:
    C = build(args.expr)
    cfg = LawConfig(
        mode=args.mode,
        enumeration_bound=args.bound,
        sample_count=args.samples,
        seed=args.seed,
        tolerance=args.tolerance,
    )
    report = check_all(C, cfg, commutativity=not args.skip_commutativity)
    out.write(dumps_canonical(report_document(args.expr, cfg, report)))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_session(args, out) -> int:
    from ..session import run_document, serialize

    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedDocument(f"cannot read session file: {exc.strerror}", args.file) from None
    out.write(serialize(run_document(text)))
    return EXIT_OK


def cmd_demo(args, out) -> int:
    print(run_demo(args.name), file=out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="collectives", description="Run and check collectives.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list constructors, combinators and fixtures").set_defaults(func=cmd_list)

    laws = sub.add_parser("laws", help="check the defining and commutativity equations")
    laws.add_argument("expr", help='collective expression, e.g. "potluck(U=[a, b])"')
    laws.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    laws.add_argument("--bound", type=_nat, default=3, help="enumeration bound (exhaustive mode)")
    laws.add_argument("--samples", type=_nat, default=200, help="cases per law (sampled mode)")
    laws.add_argument("--seed", type=_nat, default=0)
    laws.add_argument("--tolerance", type=_rational, default=Fraction(0), help="e.g. 0 or 1/1000")
    laws.add_argument("--skip-commutativity", action="store_true", help="check only the defining equations")
    laws.set_defaults(func=cmd_laws)

    session = sub.add_parser("session", help="run session documents")
    ssub = session.add_subparsers(dest="session_command", required=True)
    run = ssub.add_parser("run", help="replay a session document and settle it")
    run.add_argument("file")
    run.set_defaults(func=cmd_session)

    demo = sub.add_parser("demo", help="print a narrated example round")
    demo.add_argument("name", help=", ".join(sorted(DEMOS)))
    demo.set_defaults(func=cmd_demo)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except _USAGE_ERRORS as exc:
        print(f"error [{exc.kind}]: {exc}", file=err)
        return EXIT_USAGE
    except CollectiveError as exc:
        print(f"error [{exc.kind}]: {exc}", file=err)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error [invalid-parameter]: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

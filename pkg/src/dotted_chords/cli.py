"""Command line front end: ``dotted-chords <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 input outside the domain of the requested operation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diagram import (
    DiagramError,
    Diagram,
    check_bound,
    intersection_graph,
    is_connected,
    is_quasiplanar,
    is_regular,
    iter_diagrams,
    parse,
    pretty,
)
from .identities import SUITES
from .weights import (
    CLOSING_CONTEXT,
    FourTContext,
    four_t_obstruction,
    standard_context,
)
from .wick import wick, wick_basis_decompose, wick_prime

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

FILTERS = {
    "all": lambda d: True,
    "regular": is_regular,
    "quasiplanar": is_quasiplanar,
    "connected": is_connected,
    "cq": lambda d: is_quasiplanar(d) and is_connected(d),
}


class UsageError(Exception):
    pass


def _parse_code(text: str) -> Diagram:
    try:
        return parse(text)
    except DiagramError as exc:
        raise UsageError(str(exc)) from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_enumerate(args) -> int:
    try:
        check_bound(args.m)
    except DiagramError as exc:
        raise UsageError(str(exc)) from exc
    keep = FILTERS[args.filter]
    count = 0
    for d in iter_diagrams(args.m):
        if keep(d):
            print(d.code)
            if args.pretty:
                print(pretty(d))
            count += 1
    print(f"count: {count}")
    return EXIT_OK


def cmd_wick(args) -> int:
    target = args.target
    if target.isdigit():
        n = int(target)
        try:
            check_bound(n)
        except DiagramError as exc:
            raise UsageError(str(exc)) from exc
        d = Diagram.dots(n)
    else:
        d = _parse_code(target)

    if args.decompose:
        if not is_quasiplanar(d):
            print(f"error: {d.code!r} is not quasiplanar", file=sys.stderr)
            return EXIT_DOMAIN
        result = wick_basis_decompose(d)
    elif args.prime:
        if not is_quasiplanar(d):
            print(f"error: W' needs a quasiplanar diagram, got {d.code!r}", file=sys.stderr)
            return EXIT_DOMAIN
        result = wick_prime(d)
    else:
        result = wick(d)

    if args.format == "json":
        print(_dump(result.to_json()))
    else:
        print(result)
        if args.pretty and not args.decompose:
            for term, c in result.items():
                print(f"\n[{c:+d}] {term.code or '1'}")
                print(pretty(term))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.identity not in SUITES:
        print(
            f"error: unknown identity {args.identity!r}; choose from {', '.join(SUITES)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    try:
        check_bound(args.max_degree)
    except DiagramError as exc:
        raise UsageError(str(exc)) from exc
    failures = SUITES[args.identity](args.max_degree)
    if failures:
        print(f"FAIL {args.identity} (max degree {args.max_degree})")
        for f in failures[:10]:
            print(f"  {f}")
        if len(failures) > 10:
            print(f"  ... {len(failures) - 10} more")
        return EXIT_FAIL
    print(f"PASS {args.identity} (max degree {args.max_degree})")
    return EXIT_OK


def cmd_graph(args) -> int:
    d = _parse_code(args.code)
    g = intersection_graph(d)
    if args.format == "dot":
        sys.stdout.write(g.to_dot())
    else:
        print(_dump(g.to_json()))
    if args.pretty:
        print(pretty(d), file=sys.stderr)
    return EXIT_OK


def cmd_fourt(args) -> int:
    try:
        if args.closing:
            ctx = CLOSING_CONTEXT
        elif args.context is not None:
            ctx = FourTContext(args.context)
        else:
            ctx = standard_context(args.spectators)
    except DiagramError as exc:
        raise UsageError(str(exc)) from exc
    report = four_t_obstruction(ctx, args.rhs)
    print(_dump(report.to_json()))
    if args.pretty:
        for s, d in report.lhs + report.rhs_terms:
            print(f"\n[{s:+d}] {d.code}", file=sys.stderr)
            print(pretty(d), file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dotted-chords",
        description="Exact algebra of dotted chord diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all diagrams of a given dot-degree")
    p.add_argument("m", type=int)
    p.add_argument("--filter", choices=sorted(FILTERS), default="all")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("wick", help="quasiplanar Wick map of [n] or of a diagram code")
    p.add_argument("target", help="a dot count n, or a diagram code")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--prime", action="store_true", help="apply W' (keeps chords)")
    mode.add_argument("--decompose", action="store_true", help="rewrite in the W'-basis")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_wick)

    p = sub.add_parser("verify", help="exhaustively check an identity")
    # validated by hand so that an unknown name maps to exit 2 with a clear message
    p.add_argument("--identity", required=True)
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="labelled intersection graph")
    p.add_argument("code")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("fourt", help="4T obstruction report")
    p.add_argument("--spectators", type=int, default=0,
                   help="extra spectator chords beyond the minimal context (0..2)")
    p.add_argument("--context", help="explicit context template such as 1A2AB3B")
    p.add_argument("--closing", action="store_true",
                   help="use the four-spectator closing configuration")
    p.add_argument("--rhs", choices=["middle", "right"], default="middle")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_fourt)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DiagramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

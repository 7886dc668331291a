"""Command-line front end.

Subcommands: `census` (ranged runs with CSV/JSON output and checkpoint
resume), `verify` (invariant suite at one prime), `lift` (integer lift of a
mod-p vertex), and `export-dot` (drawable graph text for tiny primes).

Exit codes: 0 success, 1 invariant violation, 2 usage or input error,
3 I/O error, 4 resource guard tripped.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .census import (
    CSV_COLUMNS,
    CensusConfig,
    ExportGuardError,
    export_dot,
    run_census,
    verify_prime,
    write_csv,
    write_json,
)
from .core import MarkoffTriple
from .graph import (
    BASE_TRIPLE,
    InvariantViolationError,
    LiftGuardError,
    MarkoffGraph,
)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_GUARD = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markoff",
        description="Markoff move graphs over prime fields: censuses, "
        "invariant verification, integer lifts, and DOT export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    census = sub.add_parser("census", help="census every prime in a range")
    census.add_argument("--min", type=int, required=True, help="range lower bound")
    census.add_argument("--max", type=int, required=True, help="range upper bound")
    census.add_argument("--format", choices=("csv", "json"), default="csv")
    census.add_argument("--out", help="output file (stdout when omitted)")
    census.add_argument("--checkpoint", help="JSON-lines checkpoint for resume")
    census.add_argument("--workers", type=int, default=1)
    census.add_argument(
        "--no-penner",
        action="store_true",
        help="skip half-coordinate sum checks",
    )
    census.set_defaults(func=_cmd_census)

    verify = sub.add_parser("verify", help="run the invariant suite at one prime")
    verify.add_argument("p", type=int)
    verify.add_argument(
        "--oracle-bound",
        type=int,
        default=101,
        help="largest p for the O(p^3) brute-force comparison",
    )
    verify.set_defaults(func=_cmd_verify)

    lift = sub.add_parser("lift", help="lift a mod-p vertex to an integer solution")
    lift.add_argument("p", type=int)
    lift.add_argument("x1", type=int)
    lift.add_argument("x2", type=int)
    lift.add_argument("x3", type=int)
    lift.set_defaults(func=_cmd_lift)

    export = sub.add_parser("export-dot", help="DOT graph text for a small prime")
    export.add_argument("p", type=int)
    export.add_argument(
        "--force", action="store_true", help="override the size guard"
    )
    export.set_defaults(func=_cmd_export_dot)
    return parser


def _preflight_writable(path: str | None) -> None:
    if path:
        with open(path, "a", encoding="utf-8"):
            pass


def _cmd_census(args) -> int:
    config = CensusConfig(
        min_p=args.min,
        max_p=args.max,
        workers=args.workers,
        output_format=args.format,
        output_path=args.out,
        checkpoint_path=args.checkpoint,
        penner_checks=not args.no_penner,
    )
    # fail on unwritable paths before any computation
    _preflight_writable(config.output_path)
    _preflight_writable(config.checkpoint_path)

    records = []
    stream = None
    if config.output_format == "csv" and not config.output_path:
        stream = csv.writer(sys.stdout, lineterminator="\n")
        stream.writerow(CSV_COLUMNS)  # header first, rows as they complete
    for record in run_census(config):
        records.append(record)
        if not record.theorem_applies:
            print(
                f"note: p = {record.p} is outside the divisibility theorem's "
                f"scope (p > 3); verdicts reported as data",
                file=sys.stderr,
            )
        if stream is not None:
            stream.writerow(record.to_row())
            sys.stdout.flush()

    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            if config.output_format == "csv":
                write_csv(records, fh)
            else:
                write_json(records, fh)
    elif config.output_format == "json":
        write_json(records, sys.stdout)

    violations = [
        r.p
        for r in records
        if r.theorem_applies and (not r.chen_ok_all or r.penner_ok_all is False)
    ]
    if violations:
        print(
            f"INVARIANT VIOLATION at p in {violations}: this signals an "
            f"implementation bug, not a finding",
            file=sys.stderr,
        )
        return EXIT_INVARIANT
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verify_prime(args.p, oracle_bound=args.oracle_bound)
    print(report)
    return EXIT_OK if report.ok else EXIT_INVARIANT


def _cmd_lift(args) -> int:
    triple = MarkoffTriple(args.x1, args.x2, args.x3, args.p)
    graph = MarkoffGraph(args.p)
    path = graph.path_from_base(triple.code())
    if path is None:
        print(
            f"no lift via base component: {triple.coords} mod {args.p} is not "
            f"reachable from {BASE_TRIPLE} (a noteworthy finding)"
        )
        return EXIT_OK
    lifted = graph.lift(triple.code())
    a1, a2, a3 = lifted.coords
    print(f"path from {BASE_TRIPLE}: {' '.join(map(str, path)) if path else '(empty)'}")
    print(f"lift: ({a1}, {a2}, {a3})")
    lhs = a1 * a1 + a2 * a2 + a3 * a3
    print(
        f"check: {a1}^2 + {a2}^2 + {a3}^2 = {lhs} = 3*{a1}*{a2}*{a3}; "
        f"reduces to {lifted.reduce(args.p)} mod {args.p}"
    )
    return EXIT_OK


def _cmd_export_dot(args) -> int:
    sys.stdout.write(export_dot(args.p, force=args.force))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolationError as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (LiftGuardError, ExportGuardError) as e:
        print(f"resource guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

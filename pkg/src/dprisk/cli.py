"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 configuration error, 4 invariant
violation (including failed oracle checks).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .exceptions import ConfigError, DPRiskError, InvariantViolation
from .experiment import (
    aggregate,
    draw_sample,
    load_config,
    rows_to_records,
    run_sweep,
    write_aggregate_csv,
    write_json,
    write_rows_csv,
)
from .ingest import IngestPolicy, load_column, read_column, summarize
from .mechanism import release
from .model import QueryKind, Sample
from .oracle import run_oracle_check
from .risk import check_epsilon, risk_report
from .sensitivity import sensitivities

DEFAULT_SEED = 0


def _add_column_args(p):
    p.add_argument("csv", type=Path, help="CSV file with a header row")
    p.add_argument("--column", default="0", help="column name, or zero-based index (default: 0)")
    p.add_argument(
        "--missing-codes",
        type=float,
        nargs="+",
        metavar="CODE",
        help="drop exactly these values instead of all negative values",
    )
    p.add_argument("--min-floor-zero", action="store_true", help="use 0 as the universe lower bound")


def _add_sample_args(p):
    p.add_argument("--query", required=True, choices=[q.value for q in QueryKind])
    src = p.add_mutually_exclusive_group()
    src.add_argument("--proportion", type=float, help="draw this share of the universe (default: 1.0)")
    src.add_argument("--sample-file", type=Path, help="CSV holding the queried sample")
    p.add_argument("--sample-column", help="column in --sample-file (default: same as --column)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default: {DEFAULT_SEED})")


def _column(value: str):
    return int(value) if value.lstrip("-").isdigit() else value


def _policy(args) -> IngestPolicy:
    codes = tuple(args.missing_codes) if args.missing_codes else None
    return IngestPolicy(column=_column(args.column), missing_codes=codes, min_floor_zero=args.min_floor_zero)


def _universe(args):
    policy = _policy(args)
    return load_column(args.csv, policy, label=str(policy.column))


def _sample(args, universe) -> Sample:
    if args.sample_file is not None:
        column = _column(args.sample_column) if args.sample_column else _column(args.column)
        policy = IngestPolicy(column=column, missing_codes=_policy(args).missing_codes)
        return Sample(read_column(args.sample_file, policy), universe)
    proportion = 1.0 if args.proportion is None else args.proportion
    if not 0 < proportion <= 1:
        raise ConfigError(f"proportion must be in (0, 1], got {proportion}")
    return draw_sample(universe, proportion, args.seed)


def _print_json(obj):
    print(json.dumps(obj, indent=2))


def cmd_summarize(args):
    stats = summarize(_universe(args)).to_dict()
    if args.format == "json":
        _print_json(stats)
    else:
        print(",".join(stats))
        print(",".join(repr(v) if isinstance(v, float) else str(v) for v in stats.values()))


def cmd_sensitivity(args):
    universe = _universe(args)
    sample = _sample(args, universe)
    pair = sensitivities(universe, sample, args.query, args.method)
    _print_json(
        {
            "query": args.query,
            "n": len(sample),
            "delta_f": pair.global_delta_f,
            "delta_v": pair.local_delta_v,
            "method": pair.method.value,
        }
    )


def cmd_risk(args):
    check_epsilon(args.epsilon)
    universe = _universe(args)
    sample = _sample(args, universe)
    _print_json(risk_report(universe, sample, args.query, args.epsilon, args.method).to_dict())


def cmd_release(args):
    check_epsilon(args.epsilon)
    universe = _universe(args)
    sample = _sample(args, universe)
    _print_json(asdict(release(universe, sample, args.query, args.epsilon, args.seed)))


def cmd_sweep(args):
    if args.workers < 1:
        raise ConfigError("--workers must be at least 1")
    config = load_config(args.config)
    result = run_sweep(config, workers=args.workers)
    cells = aggregate(result.rows)
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    stem = args.config.stem
    paths = [
        write_rows_csv(result.rows, out / f"{stem}_rows.csv"),
        write_aggregate_csv(cells, out / f"{stem}_aggregate.csv"),
    ]
    if args.json:
        paths.append(write_json(rows_to_records(result.rows), out / f"{stem}_rows.json"))
        paths.append(write_json([c.to_record() for c in cells], out / f"{stem}_aggregate.json"))
    for cell in result.skipped:
        print(
            f"skipped: {cell.variable} {cell.query} eps={cell.epsilon} p={cell.proportion}: {cell.reason}",
            file=sys.stderr,
        )
    for p in paths:
        print(p)


def cmd_oracle_check(args):
    if args.instances < 1:
        raise ConfigError("--instances must be at least 1")
    if args.max_distinct < 1 or args.max_size < args.max_distinct:
        raise ConfigError("need 1 <= --max-distinct <= --max-size")
    if args.max_distinct > 8 or args.max_size > 12:
        raise ConfigError("brute force is capped at 8 distinct values and 12 entries")
    report = run_oracle_check(args.instances, args.seed, args.max_distinct, args.max_size)
    for line in report.lines():
        print(line)
    if not report.ok:
        raise InvariantViolation(f"{len(report.failures)} oracle mismatches")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dprisk", description="Identifiability risk of DP statistical queries.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="descriptive statistics of one column")
    _add_column_args(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("sensitivity", help="global and local sensitivity of a query")
    _add_column_args(p)
    _add_sample_args(p)
    p.add_argument("--method", choices=["exact", "analytic", "brute-force"], default="exact")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("risk", help="risk report for one query release")
    _add_column_args(p)
    _add_sample_args(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--method", choices=["exact", "analytic"], default="exact")
    p.set_defaults(func=cmd_risk)

    p = sub.add_parser("release", help="Laplace-noised query result")
    _add_column_args(p)
    _add_sample_args(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.set_defaults(func=cmd_release)

    p = sub.add_parser("sweep", help="run a sweep described by a JSON config")
    p.add_argument("config", type=Path)
    p.add_argument("--out-dir", type=Path, default=Path("."))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", help="also write JSON mirrors of both tables")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-check", help="compare sensitivity engines with brute force")
    p.add_argument("--instances", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-distinct", type=int, default=6)
    p.add_argument("--max-size", type=int, default=10)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except DPRiskError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

One subcommand per reproducible computation.  Exit codes: 0 success,
1 validation error (bad arguments, malformed rationals), 2 capability,
overflow, cache, or I/O failure.  Output is deterministic for a fixed
configuration: CSV uses commas and LF with no BOM, quotients carry six
decimals, and thread count never changes a result.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, replace
from typing import Optional

from . import cache, congruence, distribution, emit, exact, within
from .errors import (BudgetExceededError, CacheFormatError, CapabilityError,
                     InvalidProblemError, InvalidThresholdError, SigmaOverflowError)
from .sieve import DEFAULT_SEGMENT_LENGTH, SigmaSource, sieve_segment
from .types import RationalTarget, ThresholdSpec, parse_checkpoints

CACHE_DIR_ENV = "WITHINPERFECT_CACHE_DIR"

_FORMATS = ("csv", "json", "ndjson", "table")


@dataclass
class RunConfig:
    """Run-wide knobs shared by every subcommand."""

    limit: Optional[int] = None
    segment_length: int = DEFAULT_SEGMENT_LENGTH
    cache_dir: Optional[str] = None
    output_format: str = "csv"
    threads: int = 1
    strict_inequality: bool = True
    threshold_at_n: bool = True
    include_n_equals_1: bool = True

    def source(self) -> SigmaSource:
        return SigmaSource(segment_length=self.segment_length,
                           threads=self.threads, cache_dir=self.cache_dir)


_BOOL_VALUES = {"true": True, "1": True, "yes": True,
                "false": False, "0": False, "no": False}


def _parse_bool(text: str) -> bool:
    try:
        return _BOOL_VALUES[text.strip().lower()]
    except KeyError:
        raise ValueError(f"expected a boolean, got {text!r}")


def apply_config_file(config: RunConfig, path: str) -> RunConfig:
    """key=value lines override the flag values (unknown keys are an error)."""
    updates = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"malformed config line {raw.strip()!r}")
            key, value = key.strip(), value.strip()
            if key in ("limit", "segment_length", "threads"):
                updates[key] = int(value)
            elif key == "cache_dir":
                updates[key] = value or None
            elif key in ("format", "output_format"):
                if value not in _FORMATS:
                    raise ValueError(f"unknown format {value!r}")
                updates["output_format"] = value
            elif key in ("strict_inequality", "threshold_at_n", "include_n_equals_1"):
                updates[key] = _parse_bool(value)
            else:
                raise ValueError(f"unknown config key {key!r}")
    return replace(config, **updates)


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract here reserves 2 for
    capability errors, so remap parse failures to exit code 1.

    Prefix abbreviation is disabled: with it, an option like phase's --c is
    classified as ambiguous by the main parser (a prefix of --config and
    --cache-dir) before the subparser ever sees it.
    """

    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _common_options(for_subparser: bool) -> argparse.ArgumentParser:
    """Global options, accepted both before and after the subcommand.

    The subparser variant defaults everything to SUPPRESS so values already
    parsed by the main parser survive (argparse re-applies action defaults
    from a fresh namespace inside each subparser).
    """
    s = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", metavar="FILE", default=s if for_subparser else None,
                   help="key=value file overriding the other flags")
    g.add_argument("--segment-length", type=int,
                   default=s if for_subparser else DEFAULT_SEGMENT_LENGTH)
    g.add_argument("--cache-dir", default=s if for_subparser else None)
    g.add_argument("--threads", type=int, default=s if for_subparser else 1)
    g.add_argument("--format", choices=_FORMATS, default=s if for_subparser else None,
                   help="output format (default depends on the subcommand)")
    g.add_argument("--out", metavar="FILE", default=s if for_subparser else None,
                   help="write the artifact to FILE instead of stdout")
    g.add_argument("--non-strict", action="store_true",
                   default=s if for_subparser else False,
                   help="count ties: use <= instead of < in |sigma-l*n| < k")
    g.add_argument("--at-limit", action="store_true",
                   default=s if for_subparser else False,
                   help="evaluate the threshold at the limit x instead of n")
    g.add_argument("--from-two", action="store_true",
                   default=s if for_subparser else False,
                   help="count from n = 2 instead of n = 1")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options(for_subparser=True)
    parser = _Parser(prog="withinperfect", parents=[_common_options(False)],
                     description="sum-of-divisors censuses, congruence "
                                 "classification, and within-perfect counting")

    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND",
                                parser_class=_Parser)

    p = sub.add_parser("sieve", parents=[common],
                       help="sieve sigma over [lo, hi]; optionally cache it")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--cache-path", default=None,
                   help="write the segment in the binary cache format")

    p = sub.add_parser("count", parents=[common],
                       help="count n <= limit with |sigma(n)-l*n| < k(n)")
    p.add_argument("--ell", required=True)
    p.add_argument("--threshold", required=True, help="pow:C | const:K | lin:C | xlog")
    p.add_argument("--limit", type=int, required=True)

    p = sub.add_parser("series", parents=[common],
                       help="within-perfect counts at several checkpoints")
    p.add_argument("--ell", required=True)
    p.add_argument("--threshold", required=True)
    p.add_argument("--checkpoints", required=True, help="comma list, e.g. 1e4,1e5,1e6")

    p = sub.add_parser("table1", parents=[common],
                       help="recompute the published 8x3 quotient grid (l=2)")
    p.add_argument("--limit", type=int, default=2 * 10**7)

    p = sub.add_parser("figure1", parents=[common],
                       help="quotient series for k(y)=y/log y, x=2..limit")
    p.add_argument("--limit", type=int, default=10**4)

    p = sub.add_parser("perfect", parents=[common],
                       help="enumerate m <= limit with b*sigma(m) = a*m")
    p.add_argument("--ell", required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--checkpoints", default=None)

    p = sub.add_parser("wirsing", parents=[common],
                       help="perfect counts vs the uniform growth scale")
    p.add_argument("--ell", required=True)
    p.add_argument("--checkpoints", required=True)

    p = sub.add_parser("dioph", parents=[common],
                       help="solve b*sigma(n) = a*n + k exhaustively")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--checkpoints", default=None)

    p = sub.add_parser("census", parents=[common],
                       help="solutions of b*sigma(n) = k (mod n), classified")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)

    p = sub.add_parser("sporadic", parents=[common],
                       help="sporadic-solution growth report")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--checkpoints", required=True)

    p = sub.add_parser("cdf", parents=[common],
                       help="empirical distribution of sigma(n)/n")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--grid", required=True, help="comma list of query points")

    p = sub.add_parser("phase", parents=[common],
                       help="density experiment for a threshold regime")
    p.add_argument("--ell", required=True)
    p.add_argument("--regime", required=True,
                   choices=("sublinear", "linear", "superlinear"))
    p.add_argument("--c", default=None, help="exponent or slope, regime dependent")
    p.add_argument("--checkpoints", required=True)

    p = sub.add_parser("probe", parents=[common],
                       help="approximate a target by abundancy ratios")
    p.add_argument("--ell", required=True, help="target value > 1 (exact decimal)")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--search-limit", type=int, default=10**4)

    p = sub.add_parser("gcdsum", parents=[common],
                       help="sum of gcd(m, sigma(m))/m^2 over the middle range")
    p.add_argument("--x", type=int, required=True)

    return parser


def _threshold_from_args(args, config: RunConfig) -> ThresholdSpec:
    spec = ThresholdSpec.parse(args.threshold)
    return ThresholdSpec(spec.kind, spec.param, spec.fn, spec.floor, spec.ceiling,
                         strict=config.strict_inequality,
                         at_limit=not config.threshold_at_n)


def _dispatch(args, config: RunConfig) -> str:
    fmt = config.output_format
    source = config.source()

    if args.command == "sieve":
        segment = sieve_segment(args.lo, args.hi)
        if args.cache_path:
            cache.write_segment(segment, args.cache_path)
        total = int(segment.sigma.sum(dtype=object))
        return f"lo,hi,length,sigma_total\n{segment.lo},{segment.hi},{len(segment)},{total}\n"

    if args.command == "count":
        threshold = _threshold_from_args(args, config)
        result = within.count_within(RationalTarget.parse(args.ell), threshold,
                                     args.limit, source, config.include_n_equals_1)
        return emit.series_csv(result)

    if args.command == "series":
        threshold = _threshold_from_args(args, config)
        result = within.series(RationalTarget.parse(args.ell), threshold,
                               parse_checkpoints(args.checkpoints), source,
                               config.include_n_equals_1)
        return emit.series_csv(result)

    if args.command == "table1":
        report = within.table1_reproduce(source, args.limit)
        sys.stderr.write(f"elapsed: {report.elapsed_seconds:.1f}s\n")
        if fmt == "table":
            return emit.table1_text(report)
        if fmt == "csv":
            return emit.table1_csv(report)
        return emit.table1_text(report) + "\n" + emit.table1_csv(report)

    if args.command == "figure1":
        threshold = ThresholdSpec.x_over_log(strict=config.strict_inequality,
                                             at_limit=not config.threshold_at_n)
        result = within.series(RationalTarget(2, 1), threshold,
                               list(range(2, args.limit + 1)), source,
                               config.include_n_equals_1)
        return emit.series_csv(result)

    if args.command == "perfect":
        checkpoints = parse_checkpoints(args.checkpoints) if args.checkpoints else None
        census_ = exact.enumerate_perfect(RationalTarget.parse(args.ell),
                                          args.limit, source, checkpoints)
        return (emit.series_csv(census_.counting) if fmt == "csv"
                else emit.perfect_json(census_))

    if args.command == "wirsing":
        report = exact.wirsing_count_check(RationalTarget.parse(args.ell),
                                           parse_checkpoints(args.checkpoints), source)
        return emit.wirsing_csv(report)

    if args.command == "dioph":
        problem = exact.DiophantineProblem(args.a, args.b, args.k, args.limit)
        checkpoints = parse_checkpoints(args.checkpoints) if args.checkpoints else None
        solution = exact.solve_diophantine(problem, source, checkpoints)
        if fmt == "csv":
            return emit.series_csv(solution.series)
        if fmt == "ndjson":
            return emit.records_ndjson(solution.records)
        return emit.dioph_json(solution)

    if args.command == "census":
        problem = congruence.CongruenceProblem(args.b, args.k, args.limit)
        if not problem.in_uniform_range:
            sys.stderr.write(f"warning: |k|={abs(args.k)} is outside the uniform "
                             f"range b*x^(2/3)\n")
        records = congruence.census(problem, source)
        return (emit.records_json(records) if fmt == "json"
                else emit.records_ndjson(records))

    if args.command == "sporadic":
        report = congruence.sporadic_growth_report(
            args.b, args.k, parse_checkpoints(args.checkpoints), source)
        return emit.sporadic_text(report) if fmt == "table" else emit.sporadic_csv(report)

    if args.command == "cdf":
        grid = [g.strip() for g in args.grid.split(",") if g.strip()]
        result = distribution.empirical_cdf(args.limit, grid, source)
        return emit.cdf_csv(result)

    if args.command == "phase":
        report = distribution.phase_experiment(
            RationalTarget.parse(args.ell), args.regime,
            parse_checkpoints(args.checkpoints), source, c=args.c)
        return emit.phase_csv(report)

    if args.command == "probe":
        report = distribution.sigma_approx_probe(args.ell, args.depth,
                                                 args.search_limit, source)
        return emit.probe_csv(report)

    if args.command == "gcdsum":
        return emit.gcdsum_csv(exact.gcd_sum(args.x, source))

    raise ValueError(f"unknown subcommand {args.command!r}")


_DEFAULT_FORMATS = {"census": "ndjson", "dioph": "json", "perfect": "json",
                    "table1": "both", "sporadic": "csv"}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1

    try:
        config = RunConfig(
            limit=getattr(args, "limit", None),
            segment_length=args.segment_length,
            cache_dir=args.cache_dir,
            output_format=args.format or _DEFAULT_FORMATS.get(args.command, "csv"),
            threads=args.threads,
            strict_inequality=not args.non_strict,
            threshold_at_n=not args.at_limit,
            include_n_equals_1=not args.from_two,
        )
        if args.config:
            config = apply_config_file(config, args.config)
        env_cache = os.environ.get(CACHE_DIR_ENV)
        if env_cache:
            config = replace(config, cache_dir=env_cache)
        if config.cache_dir:
            os.makedirs(config.cache_dir, exist_ok=True)

        text = _dispatch(args, config)
    except (InvalidProblemError, InvalidThresholdError, ValueError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (CapabilityError, BudgetExceededError, SigmaOverflowError,
            CacheFormatError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front-end.

Subcommands:
  count      run the lifted engine on a problem file
  oracle     run the grounded brute-force counter
  check      run both and fail on mismatch
  dag-table  print the labeled-DAG counting sequence

Exit codes: 1 parse/validation error, 2 oracle cap exceeded, 3 mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .dag import count_dags_table
from .oracle import OracleCapError, oracle_wfomc
from .parser import parse_file
from .pipeline import count
from .rings import format_rational
from .syntax import ProblemError


def _per_k_key(k: tuple[int, ...]) -> str:
    """Stable key for a cardinality vector: 'bitmask^count' per occupied
    one-type, comma-joined; empty vector prints as '-'."""
    parts = [f"{i}^{ki}" for i, ki in enumerate(k) if ki]
    return ",".join(parts) if parts else "-"


def _report(value: Fraction, n: int, mode: str, started: float,
            per_cardinality=None) -> dict:
    report = {
        "count": format_rational(value),
        "domain_size": n,
        "mode": mode,
        "timing_ms": int((time.monotonic() - started) * 1000),
    }
    if per_cardinality is not None:
        report["per_cardinality"] = {
            _per_k_key(k): format_rational(v)
            for k, v in sorted(per_cardinality.items())
        }
    return report


def _emit(report: dict, as_json: bool):
    if as_json:
        print(json.dumps(report, sort_keys=True))
        return
    print(f"count: {report['count']}")
    if "oracle_count" in report:
        print(f"oracle: {report['oracle_count']}")
    if "per_cardinality" in report:
        for key, value in report["per_cardinality"].items():
            print(f"  k[{key}]: {value}")
    print(f"domain size: {report['domain_size']}", file=sys.stderr)
    print(f"mode: {report['mode']} ({report['timing_ms']} ms)",
          file=sys.stderr)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="liftmc",
        description="Exact model counting for two-variable logic with "
                    "an acyclicity axiom.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="run the lifted engine")
    p_count.add_argument("--input", required=True)
    p_count.add_argument("--domain-size", type=int, required=True)
    p_count.add_argument("--json", action="store_true")
    p_count.add_argument("--per-k", action="store_true")

    p_oracle = sub.add_parser("oracle", help="run the brute-force oracle")
    p_oracle.add_argument("--input", required=True)
    p_oracle.add_argument("--domain-size", type=int, required=True)
    p_oracle.add_argument("--json", action="store_true")

    p_check = sub.add_parser("check", help="compare engine and oracle")
    p_check.add_argument("--input", required=True)
    p_check.add_argument("--domain-size", type=int, required=True)
    p_check.add_argument("--json", action="store_true")

    p_table = sub.add_parser("dag-table", help="print DAG counts 0..N")
    p_table.add_argument("--max-n", type=int, required=True)

    args = parser.parse_args(argv)

    if args.command == "dag-table":
        for i, value in enumerate(count_dags_table(args.max_n)):
            print(f"{i} {value}")
        return 0

    try:
        problem = parse_file(args.input)
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    started = time.monotonic()
    try:
        if args.command == "count":
            result = count(problem, args.domain_size, per_k=args.per_k)
            _emit(_report(result.count, args.domain_size, "engine", started,
                          result.per_cardinality), args.json)
            return 0
        if args.command == "oracle":
            value = oracle_wfomc(problem, args.domain_size)
            _emit(_report(value, args.domain_size, "oracle", started),
                  args.json)
            return 0
        # check
        engine = count(problem, args.domain_size).count
        oracle = oracle_wfomc(problem, args.domain_size)
        agree = engine == oracle
        report = _report(engine, args.domain_size, "check", started)
        report["oracle_count"] = format_rational(oracle)
        report["match"] = agree
        _emit(report, args.json)
        if not agree:
            print(f"mismatch: engine={format_rational(engine)} "
                  f"oracle={format_rational(oracle)}", file=sys.stderr)
            return 3
        return 0
    except OracleCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

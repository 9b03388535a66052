"""
Command dispatcher for krank.

Commands:
  - table: Build (or load) the partition table and write the cache
  - pn: Print p(n)
  - nkrank: Print N_k(m, n)
  - estimate: Evaluate a named asymptotic estimator or error bound
  - sweep: Run a sweep spec file and write its CSV report
  - verify: Run the acceptance suite

Configuration follows this precedence:
  1. ~/.krank/krank-config.json (global defaults)
  2. ./.krank/krank-config.json (project-specific)
  3. ./krank-config.json (current directory)
  4. KRANK_CONFIG environment variable
  5. --config CLI argument (highest priority)
"""

import argparse
import logging
import sys
from typing import List, Optional

from . import asymptotics
from .acceptance import VerifyPlan, run_acceptance
from .config import Settings, load_settings
from .engine import KRankQuery, PartitionTable, n_k_exact, p_at
from .harness import (
    fit_bound_constant,
    load_sweep_spec,
    required_max_n,
    run_sweep,
    save_report,
    write_report,
)
from .logdomain import SignedLogReal
from .table_cache import load_or_build_table

logger = logging.getLogger("krank.main")

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"

# Estimators that read exact p-values from a table
_TABLE_ESTIMATES = (
    "dyson_sech",
    "parry_rhoades",
    "main_term_exact",
    "dprz_lhs",
    "corollary",
)

ESTIMATE_NAMES = (
    "hat_p",
    "hat_p_shift",
    "hat_f_k",
    "i_k_truncated",
    "dyson_sech",
    "dyson_sech_hat",
    "parry_rhoades",
    "main_term_exact",
    "main_term_asymptotic",
    "dprz_lhs",
    "dprz_rhs",
    "corollary",
    "error_bound_zn1",
    "error_bound_main",
)


def create_parser():
    """Create and configure argument parser."""
    parser = argparse.ArgumentParser(
        prog="krank",
        description="Exact partition rank/crank counts and their asymptotics",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Exact values
  krank pn --n 100
  krank nkrank --k 2 --m 3 --n 4

  # Build and cache a table of p(0..100000)
  krank --cache ~/.krank/ptab.bin table --n 100000

  # Crank density estimate at m = 250, n = 10000
  krank estimate dyson_sech --m 250 --n 10000

  # Run a sweep spec and write its CSV
  krank sweep --spec zn1.spec --out zn1.csv

  # Acceptance suite on a 10^4 table
  krank verify --quick
        """,
    )

    # Global options
    parser.add_argument(
        "--config",
        type=str,
        default=None,
        help="Path to krank configuration file (default: auto-discover)",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Log progress and configuration discovery to stderr",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Worker threads for sweeps (default: machine parallelism)",
    )
    parser.add_argument(
        "--cache",
        type=str,
        default=None,
        help="Partition table cache file, loaded when large enough",
    )

    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    table_parser = subparsers.add_parser("table", help="Build or load the partition table")
    table_parser.add_argument("--n", type=int, required=True, help="Largest index")
    table_parser.set_defaults(func=handle_table)

    pn_parser = subparsers.add_parser("pn", help="Print p(n)")
    pn_parser.add_argument("--n", type=int, required=True)
    pn_parser.set_defaults(func=handle_pn)

    nkrank_parser = subparsers.add_parser("nkrank", help="Print N_k(m, n)")
    nkrank_parser.add_argument("--k", type=int, required=True)
    nkrank_parser.add_argument("--m", type=int, required=True)
    nkrank_parser.add_argument("--n", type=int, required=True)
    nkrank_parser.set_defaults(func=handle_nkrank)

    estimate_parser = subparsers.add_parser(
        "estimate", help="Evaluate a named estimator or error bound"
    )
    estimate_parser.add_argument("name", choices=ESTIMATE_NAMES)
    estimate_parser.add_argument("--n", type=int, required=True)
    estimate_parser.add_argument("--m", type=int, default=0)
    estimate_parser.add_argument("--k", type=int, default=1)
    estimate_parser.add_argument(
        "--r", type=int, default=1, help="Difference order (ell for hat_f_k)"
    )
    estimate_parser.add_argument("--x", type=int, default=0, help="Shift for hat_p_shift")
    estimate_parser.set_defaults(func=handle_estimate)

    sweep_parser = subparsers.add_parser("sweep", help="Run a sweep spec file")
    sweep_parser.add_argument("--spec", type=str, required=True, help="Sweep spec file")
    sweep_parser.add_argument(
        "--out", type=str, default=None, help="CSV output (default: spec output or stdout)"
    )
    sweep_parser.set_defaults(func=handle_sweep)

    verify_parser = subparsers.add_parser("verify", help="Run the acceptance suite")
    verify_parser.add_argument(
        "--quick", action="store_true", help="Use the smaller quick-mode table"
    )
    verify_parser.set_defaults(func=handle_verify)

    return parser


def _usage_error(args) -> Optional[str]:
    """Flag checks done before any computation."""
    if args.threads is not None and args.threads < 1:
        return "--threads must be >= 1"
    if getattr(args, "n", 0) < 0:
        return "--n must be >= 0"
    if getattr(args, "k", 1) < 1:
        return "--k must be >= 1"
    if getattr(args, "r", 0) < 0:
        return "--r must be >= 0"
    return None


def _threads(args, settings: Settings) -> Optional[int]:
    return args.threads if args.threads is not None else settings.threads


def _load_table(args, settings: Settings, max_n: int) -> PartitionTable:
    cache = args.cache or settings.table_cache
    return load_or_build_table(max_n, cache, budget=settings.table_budget)


def _format_value(value) -> str:
    if isinstance(value, SignedLogReal):
        return value.format()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def handle_table(args, settings: Settings) -> int:
    table = _load_table(args, settings, args.n)
    print(f"max_n={table.max_n} digits(p(max_n))={len(str(table.values[-1]))}")
    return 0


def handle_pn(args, settings: Settings) -> int:
    table = _load_table(args, settings, args.n)
    print(p_at(table, args.n))
    return 0


def handle_nkrank(args, settings: Settings) -> int:
    table = _load_table(args, settings, args.n)
    print(n_k_exact(table, KRankQuery(args.k, args.m, args.n)).value)
    return 0


def handle_estimate(args, settings: Settings) -> int:
    name, n, m, k, r = args.name, args.n, args.m, args.k, args.r
    table = None
    if name in _TABLE_ESTIMATES:
        table = _load_table(args, settings, n + 1 if name == "dprz_lhs" else n)

    if name == "hat_p":
        value = asymptotics.hat_p(n)
    elif name == "hat_p_shift":
        value = asymptotics.hat_p_shift(n, args.x, settings.shift_multiple)
    elif name == "hat_f_k":
        value = asymptotics.hat_f_k(k, r, abs(m), n)
    elif name == "i_k_truncated":
        value = asymptotics.i_k_truncated(k, abs(m), n)
    elif name == "dyson_sech":
        value = asymptotics.dyson_sech_estimate(m, n, SignedLogReal.from_int(p_at(table, n)))
    elif name == "dyson_sech_hat":
        value = asymptotics.dyson_sech_estimate(m, n, asymptotics.hat_p(n))
    elif name == "parry_rhoades":
        value = asymptotics.parry_rhoades_estimate(
            k, m, n, SignedLogReal.from_int(p_at(table, n))
        )
    elif name == "main_term_exact":
        value = asymptotics.main_term_exact(table, k, m, n)
    elif name == "main_term_asymptotic":
        value = asymptotics.main_term_asymptotic(k, m, n)
    elif name == "dprz_lhs":
        value = asymptotics.dprz_lhs(table, m, n)
    elif name == "dprz_rhs":
        value = asymptotics.dprz_rhs(m, n)
    elif name == "corollary":
        value = asymptotics.corollary_prediction(
            r, m, n, SignedLogReal.from_int(p_at(table, n - m))
        )
    elif name == "error_bound_zn1":
        value = asymptotics.error_bound_zn1(m, n)
    else:
        value = asymptotics.error_bound_main(k, m, n)

    print(_format_value(value))
    return 0


def handle_sweep(args, settings: Settings) -> int:
    spec = load_sweep_spec(args.spec)
    table = _load_table(args, settings, required_max_n(spec))
    rows = run_sweep(spec, table, _threads(args, settings))

    out = args.out or spec.output
    if out:
        save_report(rows, out)
    else:
        write_report(rows, sys.stdout)

    if any(row.ratio is not None for row in rows):
        fit = fit_bound_constant(rows)
        print(
            f"fitted constant {fit.value:.17g} at k={fit.row.k} r={fit.row.r} "
            f"n={fit.row.n} m={fit.row.m}",
            file=sys.stderr,
        )

    failed = sum(1 for row in rows if not row.passed)
    if failed:
        print(f"{failed} of {len(rows)} rows failed", file=sys.stderr)
        return 1
    return 0


def handle_verify(args, settings: Settings) -> int:
    if args.quick:
        plan = VerifyPlan.quick(
            settings.verify_thresholds,
            settings.verify_quick_max_n,
            settings.enumeration_budget,
        )
    else:
        plan = VerifyPlan.full(
            settings.verify_thresholds,
            settings.verify_max_n,
            settings.enumeration_budget,
        )
    table = _load_table(args, settings, plan.max_n)
    results = run_acceptance(plan, table, _threads(args, settings))

    for result in results:
        print(result.verdict_line())
    passed = sum(1 for result in results if result.passed)
    print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for krank."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            parser.print_help(sys.stderr)
            return 2
        problem = _usage_error(args)
        if problem:
            parser.error(problem)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        settings = load_settings(args.config, verbose=args.verbose)
        return args.func(args, settings)
    except KeyboardInterrupt:
        print("\nCancelled", file=sys.stderr)
        return 130
    except Exception as e:
        logger.debug("Command failed", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

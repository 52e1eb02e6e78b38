"""
Разбор аргументов командной строки
"""

import argparse
from typing import List, Optional

from ...domain.entity.estimate import SmoothingParam

PROG = "markov-smooth"


def _smoothing(value: str) -> SmoothingParam:
    try:
        return SmoothingParam.parse(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _int_list(value: str) -> List[int]:
    try:
        return [_positive_int(v) for v in value.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _cell(value: str) -> tuple:
    try:
        i, j = (int(v) for v in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'i,j', got {value}")
    return i, j


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="master seed (default: MARKOV_SMOOTH_SEED or config)")
    parser.add_argument("--out", default=None, help="output file (default: stdout)")
    parser.add_argument("--decimals", type=int, default=None, help="decimal places in output (default: 6)")
    parser.add_argument(
        "--row-tol",
        type=float,
        default=None,
        help="row-sum tolerance for input matrices (default: 1e-9)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Markov chain transition matrices: MLE, smoothing, bootstrap CIs and coverage studies",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "exit codes: 0 success, 2 invalid input, 3 no steady state\n"
            "examples:\n"
            f"  {PROG} generate --matrix data/eq8.csv --n 10 --seed 1\n"
            f"  {PROG} estimate --sequence data/table1_sample1.csv --d 4 --u 0.5\n"
            f"  {PROG} study --config data/table5_desk.json --workers 4"
        ),
    )
    parser.add_argument("--env", default=None, help="config environment (default: ENVIRONMENT or development)")
    parser.add_argument("--log-level", default=None, help="override logging level")
    sub = parser.add_subparsers(dest="command", required=True)

    generate = sub.add_parser("generate", help="generate a chain from a transition matrix")
    generate.add_argument("--matrix", required=True)
    generate.add_argument("--n", type=_positive_int, required=True)
    generate.add_argument("--initial", default="uniform", help="uniform | point:k | p1,p2,...")
    _add_common(generate)

    estimate = sub.add_parser("estimate", help="MLE (or smoothed estimate with --u) from a sequence")
    estimate.add_argument("--sequence", required=True)
    estimate.add_argument("--d", type=_positive_int, required=True)
    estimate.add_argument("--u", type=_smoothing, default=None, help="smoothing parameter, 'inf' = MLE")
    estimate.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(estimate)

    bootstrap = sub.add_parser("bootstrap", help="bootstrap a generator matrix, JSON summary with percentile CIs")
    bootstrap.add_argument("--matrix", required=True)
    bootstrap.add_argument("--n", type=_positive_int, required=True)
    bootstrap.add_argument("--B", type=int, default=None)
    bootstrap.add_argument("--alpha", type=float, default=None, help="per-tail level (default: 0.05)")
    bootstrap.add_argument("--initial", default="uniform", help="uniform | point:k | p1,p2,...")
    bootstrap.add_argument("--workers", type=_positive_int, default=None)
    bootstrap.add_argument("--batch-out", default=None, help="CSV with B rows of vectorized estimates")
    bootstrap.add_argument("--ecdf-cell", type=_cell, default=None, help="1-based 'i,j' cell for ECDF export")
    bootstrap.add_argument("--ecdf-out", default=None, help="CSV with value,probability pairs")
    _add_common(bootstrap)

    study = sub.add_parser("study", help="coverage study of raw and smoothed bootstrap intervals")
    study.add_argument("--config", required=True, help="study JSON")
    study.add_argument("--preset", choices=("desk", "full"), default=None)
    study.add_argument("--B", type=int, default=None, help="resamples per replication (overrides config and preset)")
    study.add_argument("--R", type=int, default=None, help="replications (overrides config and preset)")
    study.add_argument("--nominal", type=float, default=None, help="nominal coverage, e.g. 0.9")
    study.add_argument("--layout", choices=("wide", "long"), default="wide")
    study.add_argument("--table-out", default=None, help="rendered coverage table")
    study.add_argument("--workers", type=_positive_int, default=None)
    _add_common(study)

    steady = sub.add_parser("steady", help="steady-state distribution as the limit of P^m")
    steady.add_argument("--matrix", required=True)
    steady.add_argument("--tol", type=float, default=None)
    _add_common(steady)

    rates = sub.add_parser("rates", help="scaled deviations of MLE and smoothed estimates over n")
    rates.add_argument("--matrix", required=True)
    rates.add_argument("--n-grid", type=_int_list, default=[50, 100, 500, 1000, 10000])
    rates.add_argument("--u", type=_smoothing, default=SmoothingParam(0.5))
    _add_common(rates)

    return parser


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)

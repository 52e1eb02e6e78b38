"""
Команды CLI

Каждая команда полностью определяется своими флагами: seed по умолчанию
берётся из конфигурации (MARKOV_SMOOTH_SEED), часы не читаются.
Результат пишется в --out или в stdout, журнал идёт в stderr.
"""

import logging
import sys
from argparse import Namespace
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, Optional

from ...adapter.repository.matrix_repository import write_text
from ...config.dependencies import Services
from ...domain.entity.bootstrap_result import BootstrapConfig
from ...domain.entity.chain import Distribution, SeedSpec, TransitionMatrix
from ...domain.entity.coverage_report import CoverageReport
from ...domain.errors import ParameterOutOfRangeError
from ...domain.service.bootstrap.percentile import element_cis
from ...domain.service.bootstrap.resampler import run_bootstrap
from ...domain.service.chain.chain_core import generate_chain, steady_state
from ...domain.service.estimation.mle import count_transitions, estimate_from_counts, observed_fraction
from ...domain.service.estimation.smoothing import deviation_table, smooth

logger = logging.getLogger(__name__)


def parse_initial(raw: Optional[str], d: int) -> Distribution:
    """uniform | point:k (1-based) | p1,p2,...,pd"""
    text = (raw or "uniform").strip().lower()
    if text == "uniform":
        return Distribution.uniform(d)
    if text.startswith("point:"):
        try:
            state = int(text.split(":", 1)[1])
        except ValueError:
            raise ParameterOutOfRangeError("initial", raw, "uniform, point:k or p1,...,pd")
        return Distribution.point_mass(d, state)
    try:
        probs = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParameterOutOfRangeError("initial", raw, "uniform, point:k or p1,...,pd")
    if len(probs) != d:
        raise ParameterOutOfRangeError("initial", raw, f"{d} probabilities")
    return Distribution.from_probs(probs)


def _seed(args: Namespace, services: Services) -> int:
    return args.seed if args.seed is not None else services.seed


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_text(text, out)
        logger.info(f"[OK] written {out}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def cmd_generate(args: Namespace, services: Services) -> int:
    P = services.matrix_repo.load_matrix(args.matrix)
    initial = parse_initial(args.initial, P.d)
    seed = _seed(args, services)
    seq = generate_chain(P, initial, args.n, SeedSpec(seed))
    logger.info(f"[OK] generated chain: d={P.d}, n={args.n}, seed={seed}")
    _emit(services.matrix_repo.dump_sequence(seq), args.out)
    return 0


def cmd_estimate(args: Namespace, services: Services) -> int:
    seq = services.matrix_repo.load_sequence(args.sequence, args.d)
    counts = count_transitions(seq)
    estimate = TransitionMatrix(estimate_from_counts(counts.transitions))
    logger.info(
        f"[OK] MLE from n={seq.n}: {observed_fraction(counts):.0%} of transitions observed, "
        f"{counts.unvisited.size} unvisited states"
    )
    if args.u is not None:
        estimate = smooth(estimate, seq.n, args.u)
        logger.info(f"[OK] smoothed with u={args.u.label}")
    _emit(services.matrix_repo.dump_matrix(estimate, args.format), args.out)
    return 0


def cmd_bootstrap(args: Namespace, services: Services) -> int:
    defaults = services.config.bootstrap
    generator = services.matrix_repo.load_matrix(args.matrix)
    alpha = args.alpha if args.alpha is not None else defaults.alpha
    cfg = BootstrapConfig(
        B=args.B if args.B is not None else defaults.B,
        n=args.n,
        generator=generator,
        initial=parse_initial(args.initial, generator.d),
        seed=SeedSpec(_seed(args, services)),
    )
    batch = run_bootstrap(cfg, pool=services.pool, chunk_size=defaults.chunk_size)
    intervals = element_cis(batch, alpha)

    reports = services.report_repo
    if args.batch_out:
        write_text(reports.batch_csv(batch), args.batch_out)
        logger.info(f"[OK] batch written to {args.batch_out}")
    if args.ecdf_cell is not None:
        i, j = args.ecdf_cell
        if not (1 <= i <= batch.d and 1 <= j <= batch.d):
            raise ParameterOutOfRangeError("ecdf-cell", args.ecdf_cell, f"1..{batch.d}")
        target = args.ecdf_out or f"ecdf_{i}_{j}.csv"
        write_text(reports.ecdf_csv(batch.ecdf(i, j)), target)
        logger.info(f"[OK] ECDF of cell ({i},{j}) written to {target}")

    _emit(reports.bootstrap_summary(batch, intervals, n=cfg.n, generator=generator), args.out)
    return 0


def cmd_study(args: Namespace, services: Services) -> int:
    configs = services.study_config_repo.load(Path(args.config), seed=args.seed, preset=args.preset)
    overrides = {
        key: value
        for key, value in (("B", args.B), ("R", args.R), ("nominal", args.nominal))
        if value is not None
    }
    if overrides:
        configs = [replace(cfg, **overrides) for cfg in configs]
        logger.info(f"[OK] study overrides from flags: {overrides}")
    report = CoverageReport.merge(services.study_usecase.execute(cfg) for cfg in configs)

    reports = services.report_repo
    table = reports.render_coverage_table(report)
    _emit(reports.coverage_csv(report, layout=args.layout), args.out)
    if args.table_out:
        write_text(table, args.table_out)
        logger.info(f"[OK] table written to {args.table_out}")
    elif args.out:
        sys.stdout.write(table)
    else:
        sys.stderr.write(table)
    return 0


def cmd_steady(args: Namespace, services: Services) -> int:
    P = services.matrix_repo.load_matrix(args.matrix)
    limits = services.config.steady_state
    tol = args.tol if args.tol is not None else limits.tol
    pi = steady_state(P, tol=tol, max_power=limits.max_power)
    decimals = services.report_repo.decimals
    _emit(",".join(f"{p:.{decimals}f}" for p in pi.probs) + "\n", args.out)
    return 0


def cmd_rates(args: Namespace, services: Services) -> int:
    truth = services.matrix_repo.load_matrix(args.matrix)
    seed = _seed(args, services)
    rows = deviation_table(truth, args.n_grid, args.u, SeedSpec(seed))
    logger.info(f"[OK] deviation table: n={args.n_grid}, u={args.u.label}, seed={seed}")
    _emit(services.report_repo.deviation_text(rows), args.out)
    return 0


COMMANDS: Dict[str, Callable[[Namespace, Services], int]] = {
    "generate": cmd_generate,
    "estimate": cmd_estimate,
    "bootstrap": cmd_bootstrap,
    "study": cmd_study,
    "steady": cmd_steady,
    "rates": cmd_rates,
}

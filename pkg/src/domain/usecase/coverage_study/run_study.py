"""
Исследование покрытия бутстрэп-интервалов (сырой и сглаженный бутстрэп)

Для каждой длины n и репликации r:
1. одна цепь длины n из истинной матрицы, по ней P̂ и P̃ для каждого u
2. бутстрэп с генератором P̂ (плечо u = ∞) и P̃ (конечные u); все плечи
   используют одну и ту же цепь и одни и те же равномерные числа ресэмплов
3. процентильные интервалы для отслеживаемых ячеек
4. покрытие = доля репликаций, где интервал содержит истинное значение
"""

import logging
import time
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ....lib.clients.worker_pool import WorkerPool
from ...entity.bootstrap_result import ConfidenceInterval
from ...entity.chain import Distribution, SeedSpec, TransitionMatrix
from ...entity.coverage_report import CoverageCell, CoverageReport, StudyConfig
from ...entity.estimate import SmoothingParam
from ...errors import EmptySampleError
from ...service.bootstrap.percentile import column_cis
from ...service.bootstrap.resampler import estimates_from_uniforms, resample_uniforms
from ...service.chain.chain_core import generate_chain
from ...service.estimation.mle import mle_estimate
from ...service.estimation.smoothing import smooth

logger = logging.getLogger(__name__)


def coverage(intervals: Sequence[ConfidenceInterval], true_value: float) -> float:
    """Доля интервалов [x_L, x_U], содержащих true_value (границы включены)"""
    if not intervals:
        raise EmptySampleError("interval list")
    covered = sum(1 for ci in intervals if ci.contains(true_value))
    return covered / len(intervals)


def replicate(
    truth: TransitionMatrix,
    initial: Distribution,
    n: int,
    u_grid: Tuple[SmoothingParam, ...],
    B: int,
    alpha: float,
    cells: Tuple[Tuple[int, int], ...],
    seed: SeedSpec,
) -> np.ndarray:
    """
    Одна репликация. Возвращает массив (len(u_grid), len(cells), 2):
    [..., 0] равно 1.0, если интервал накрыл истину; [..., 1] это ширина интервала
    """
    d = truth.d
    seq = generate_chain(truth, initial, n, seed.spawn(0))
    P_hat = mle_estimate(seq)
    uniforms = resample_uniforms(seed.spawn(1), B, n)
    resample_initial = Distribution.uniform(d)
    columns = [(i - 1) * d + (j - 1) for i, j in cells]
    true_values = [float(truth.entries[i - 1, j - 1]) for i, j in cells]

    result = np.zeros((len(u_grid), len(cells), 2))
    for a, u in enumerate(u_grid):
        generator = smooth(P_hat, n, u)
        estimates = estimates_from_uniforms(generator, resample_initial, uniforms)
        for c, ci in enumerate(column_cis(estimates, columns, alpha)):
            result[a, c, 0] = 1.0 if ci.contains(true_values[c]) else 0.0
            result[a, c, 1] = ci.width
    return result


class RunStudyUseCase:
    """Use case исследования покрытия"""

    def __init__(self, pool: Optional[WorkerPool] = None):
        self.pool = pool or WorkerPool(1)

    def execute(self, cfg: StudyConfig) -> CoverageReport:
        start_time = time.time()
        logger.info(
            f"[START] coverage study '{cfg.truth_name}': n={list(cfg.n_grid)}, "
            f"u={[u.label for u in cfg.u_grid]}, B={cfg.B}, R={cfg.R}, "
            f"nominal={cfg.nominal}, seed={cfg.seed.master_seed}, workers={self.pool.workers}"
        )

        cells: List[CoverageCell] = []
        initial = cfg.initial_distribution
        for n_index, n in enumerate(cfg.n_grid):
            arm_seed = cfg.seed.spawn(n_index)
            tasks = [
                (cfg.truth, initial, n, cfg.u_grid, cfg.B, cfg.alpha, cfg.tracked_cells, arm_seed.spawn(r))
                for r in range(cfg.R)
            ]
            outcomes = self.pool.starmap(replicate, tasks)

            totals = np.zeros_like(outcomes[0])
            for outcome in outcomes:
                totals += outcome

            for a, u in enumerate(cfg.u_grid):
                for c, cell in enumerate(cfg.tracked_cells):
                    cells.append(
                        CoverageCell(
                            truth=cfg.truth_name,
                            n=n,
                            u=u,
                            cell=cell,
                            coverage=float(totals[a, c, 0] / cfg.R),
                            mean_width=float(totals[a, c, 1] / cfg.R),
                            replications=cfg.R,
                        )
                    )
            logger.info(
                f"[OK] n={n}: "
                + ", ".join(
                    f"u={u.label}: {totals[a, 0, 0] / cfg.R:.3f}" for a, u in enumerate(cfg.u_grid)
                )
            )

        elapsed = time.time() - start_time
        logger.info(f"[OK] study '{cfg.truth_name}' finished in {elapsed:.1f}s")
        return CoverageReport(nominal=cfg.nominal, cells=tuple(cells))


def run_study(cfg: StudyConfig, pool: Optional[WorkerPool] = None) -> CoverageReport:
    return RunStudyUseCase(pool).execute(cfg)

"""
Бутстрэп для цепей Маркова

Из матрицы-генератора (P̂ или P̃) строятся B цепей длины n; ресэмпл k
использует поток seed.spawn(k), k = 1..B. По каждому ресэмплу считается MLE,
вектор vec(P̂*_k) кладётся в строку k-1 пачки. Разбиение на части и число
воркеров на результат не влияют.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from ....lib.clients.worker_pool import WorkerPool, chunk_indices
from ...entity.bootstrap_result import BootstrapBatch, BootstrapConfig
from ...entity.chain import Distribution, SeedSpec, TransitionMatrix
from ..chain.chain_core import walk
from ..chain.random_streams import draw_uniforms
from ..estimation.mle import mle_estimate_batch

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 250


def resample_seeds(seed: SeedSpec, indices: Sequence[int]) -> List[SeedSpec]:
    return [seed.spawn(k) for k in indices]


def resample_uniforms(seed: SeedSpec, B: int, n: int) -> np.ndarray:
    """Равномерные числа всех B ресэмплов (B×n), строка k-1 из потока seed.spawn(k)"""
    return draw_uniforms(resample_seeds(seed, range(1, B + 1)), n)


def estimates_from_uniforms(
    generator: TransitionMatrix, initial: Distribution, uniforms: np.ndarray
) -> np.ndarray:
    """
    Ресэмплы из заранее выбранных равномерных чисел → B×d² оценок.
    Одни и те же uniforms с разными генераторами дают общие случайные числа
    """
    states = walk(generator, initial, uniforms)
    return mle_estimate_batch(states, generator.d)


def _resample_chunk(
    generator: TransitionMatrix,
    initial: Distribution,
    n: int,
    seed: SeedSpec,
    indices: range,
) -> np.ndarray:
    uniforms = draw_uniforms(resample_seeds(seed, indices), n)
    return estimates_from_uniforms(generator, initial, uniforms)


def run_bootstrap(
    cfg: BootstrapConfig,
    pool: Optional[WorkerPool] = None,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> BootstrapBatch:
    pool = pool or WorkerPool(1)
    initial = cfg.initial_distribution
    chunks = chunk_indices(1, cfg.B + 1, chunk_size)

    logger.info(
        f"[START] bootstrap: B={cfg.B}, n={cfg.n}, d={cfg.generator.d}, "
        f"seed={cfg.seed.master_seed}, workers={pool.workers}"
    )
    parts = pool.starmap(
        _resample_chunk,
        [(cfg.generator, initial, cfg.n, cfg.seed, indices) for indices in chunks],
    )
    batch = BootstrapBatch.from_estimates(np.vstack(parts))
    logger.info(f"[OK] bootstrap finished: {batch.B} resamples")
    return batch

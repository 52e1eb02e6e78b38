"""
Сглаженная оценка P̃ = (P̂ + n^{-u}) / ω, ω = 1 + d·n^{-u}, и диагностики скорости
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ...entity.chain import Distribution, SeedSpec, TransitionMatrix
from ...entity.estimate import SmoothingParam
from ...errors import DimensionMismatchError, ParameterOutOfRangeError
from ..chain.chain_core import generate_chain
from .mle import mle_estimate

logger = logging.getLogger(__name__)


def smooth(P_hat: TransitionMatrix, n: int, u: SmoothingParam) -> TransitionMatrix:
    """
    Args:
        P_hat: оценка MLE
        n: длина цепи, по которой построена P_hat (не n-1)
        u: параметр сглаживания; u = ∞ возвращает P_hat без изменений
    """
    if n < 1:
        raise ParameterOutOfRangeError("n", n, "n >= 1")
    u = SmoothingParam.parse(u)
    if u.is_infinite:
        return P_hat
    shift = float(n) ** (-u.u)
    omega = 1.0 + shift * P_hat.d
    smoothed = (P_hat.entries + shift) / omega
    return TransitionMatrix(smoothed / smoothed.sum(axis=1, keepdims=True))


def smoothing_gap(P_hat: TransitionMatrix, n: int, u: SmoothingParam) -> float:
    """max |P̃ - P̂|; не превосходит n^{-u}(d+1)/ω"""
    return smooth(P_hat, n, u).max_abs_diff(P_hat)


def scaled_deviation(P_est: TransitionMatrix, P_true: TransitionMatrix, n: int) -> np.ndarray:
    """√n (P_est - P_true) поэлементно"""
    if P_est.d != P_true.d:
        raise DimensionMismatchError(P_true.d, P_est.d)
    if n < 1:
        raise ParameterOutOfRangeError("n", n, "n >= 1")
    return math.sqrt(n) * (P_est.entries - P_true.entries)


@dataclass(frozen=True)
class DeviationRow:
    """Одна строка таблицы √n(P̂_n - P) и √n(P̃_n - P)"""

    n: int
    mle_deviation: np.ndarray
    smoothed_deviation: np.ndarray

    @property
    def mle_max(self) -> float:
        return float(np.max(np.abs(self.mle_deviation)))

    @property
    def smoothed_max(self) -> float:
        return float(np.max(np.abs(self.smoothed_deviation)))


def deviation_table(
    truth: TransitionMatrix,
    n_grid: Sequence[int],
    u: SmoothingParam,
    seed: SeedSpec,
    initial: Distribution = None,
) -> List[DeviationRow]:
    """
    Для каждого n одна цепь из truth (поток seed.spawn(индекс n)),
    по ней P̂_n и P̃_n и их масштабированные отклонения от truth
    """
    u = SmoothingParam.parse(u)
    initial = initial if initial is not None else Distribution.uniform(truth.d)
    rows = []
    for index, n in enumerate(n_grid):
        seq = generate_chain(truth, initial, n, seed.spawn(index))
        P_hat = mle_estimate(seq)
        P_tilde = smooth(P_hat, n, u)
        row = DeviationRow(
            n=n,
            mle_deviation=scaled_deviation(P_hat, truth, n),
            smoothed_deviation=scaled_deviation(P_tilde, truth, n),
        )
        logger.debug(f"n={n}: max|MLE|={row.mle_max:.4f}, max|smoothed|={row.smoothed_max:.4f}")
        rows.append(row)
    return rows

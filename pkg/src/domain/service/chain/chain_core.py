"""
Ядро цепей Маркова: валидация матриц, генерация цепей, степени матрицы
и стационарное распределение как предел P^m
"""

import logging
from typing import Sequence

import numpy as np

from ...entity.chain import Distribution, SeedSpec, StateSequence, TransitionMatrix
from ...errors import (
    DimensionMismatchError,
    EntryOutOfRangeError,
    NegativeEntryError,
    NoLimitError,
    NonSquareError,
    ParameterOutOfRangeError,
    RowSumViolationError,
)
from .random_streams import draw_uniforms

logger = logging.getLogger(__name__)

ROW_SUM_TOLERANCE = 1e-9
STEADY_STATE_TOL = 1e-10
STEADY_STATE_MAX_POWER = 2**40


def validate_matrix(raw, tolerance: float = ROW_SUM_TOLERANCE) -> TransitionMatrix:
    """
    Проверяет матрицу переходов и нормирует строки точно

    Raises:
        NonSquareError, NegativeEntryError, EntryOutOfRangeError, RowSumViolationError
    """
    entries = np.array(raw, dtype=np.float64)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
        raise NonSquareError(tuple(entries.shape))

    for i, j in zip(*np.nonzero(~np.isfinite(entries))):
        raise EntryOutOfRangeError(int(i), int(j), float(entries[i, j]))
    for i, j in zip(*np.nonzero(entries < 0.0)):
        raise NegativeEntryError(int(i), int(j), float(entries[i, j]))
    for i, j in zip(*np.nonzero(entries > 1.0)):
        raise EntryOutOfRangeError(int(i), int(j), float(entries[i, j]))

    row_sums = entries.sum(axis=1)
    for i, row_sum in enumerate(row_sums):
        if abs(row_sum - 1.0) > tolerance:
            raise RowSumViolationError(i, float(row_sum))

    return TransitionMatrix(entries / row_sums[:, None])


def walk(P: TransitionMatrix, initial: Distribution, uniforms: np.ndarray) -> np.ndarray:
    """
    Обратная функция распределения по накопленной строке, слева направо.
    uniforms: B×n, результат B×n 0-based состояний
    """
    uniforms = np.atleast_2d(uniforms)
    B, n = uniforms.shape
    cum_rows = P.cumulative()
    cum_initial = initial.cumulative()

    states = np.empty((B, n), dtype=np.int64)
    states[:, 0] = np.searchsorted(cum_initial, uniforms[:, 0], side="right")
    for k in range(1, n):
        thresholds = cum_rows[states[:, k - 1]]
        states[:, k] = np.count_nonzero(thresholds <= uniforms[:, k, None], axis=1)
    return states


def generate_chains(
    P: TransitionMatrix, initial: Distribution, n: int, seeds: Sequence[SeedSpec]
) -> np.ndarray:
    """Несколько цепей сразу; строка b совпадает с generate_chain(..., seeds[b])"""
    if initial.d != P.d:
        raise DimensionMismatchError(P.d, initial.d, "initial distribution")
    if n < 1:
        raise ParameterOutOfRangeError("n", n, "n >= 1")
    return walk(P, initial, draw_uniforms(seeds, n))


def generate_chain(
    P: TransitionMatrix, initial: Distribution, n: int, seed: SeedSpec
) -> StateSequence:
    states = generate_chains(P, initial, n, [seed])[0]
    return StateSequence(states, P.d)


def _row_divergence(M: np.ndarray) -> float:
    """max по столбцам (max_i - min_i) элементов M"""
    return float(np.max(M.max(axis=0) - M.min(axis=0)))


def matrix_power(P: TransitionMatrix, m: int) -> TransitionMatrix:
    """P^m возведением в квадрат; строки перенормируются после каждого умножения"""
    if m < 1:
        raise ParameterOutOfRangeError("m", m, "m >= 1")
    result = None
    base = P.entries.copy()
    while m:
        if m & 1:
            result = base.copy() if result is None else result @ base
            result /= result.sum(axis=1, keepdims=True)
        m >>= 1
        if m:
            base = base @ base
            base /= base.sum(axis=1, keepdims=True)
    return TransitionMatrix(result)


def state_distribution(P: TransitionMatrix, initial: Distribution, k: int) -> Distribution:
    """V_k = (P')^{k-1} V_1"""
    if initial.d != P.d:
        raise DimensionMismatchError(P.d, initial.d, "initial distribution")
    if k < 1:
        raise ParameterOutOfRangeError("k", k, "k >= 1")
    if k == 1:
        return initial
    probs = initial.probs @ matrix_power(P, k - 1).entries
    return Distribution(probs / probs.sum())


def steady_state(
    P: TransitionMatrix,
    tol: float = STEADY_STATE_TOL,
    max_power: int = STEADY_STATE_MAX_POWER,
) -> Distribution:
    """
    Стационарное распределение Π как общая строка lim P^m

    Возводит P в квадрат, пока расхождение строк не станет меньше tol.

    Raises:
        NoLimitError: эффективная степень превысила max_power
    """
    if tol <= 0:
        raise ParameterOutOfRangeError("tol", tol, "tol > 0")
    if max_power < 1:
        raise ParameterOutOfRangeError("max_power", max_power, "max_power >= 1")

    M = P.entries.copy()
    power = 1
    while True:
        divergence = _row_divergence(M)
        if divergence < tol:
            logger.debug(f"steady state reached at P^{power} (divergence={divergence:.3g})")
            row = M[0]
            return Distribution(row / row.sum())
        if power * 2 > max_power:
            raise NoLimitError(power, divergence)
        M = M @ M
        M /= M.sum(axis=1, keepdims=True)
        power *= 2


def two_state_power(a: float, m: int) -> TransitionMatrix:
    """
    m-я степень матрицы [[(1+a)/2, (1-a)/2], [(1-a)/2, (1+a)/2]] в замкнутой форме
    """
    if not 0.0 <= a < 1.0:
        raise ParameterOutOfRangeError("a", a, "0 <= a < 1")
    if m < 1:
        raise ParameterOutOfRangeError("m", m, "m >= 1")
    am = a**m
    stay = (1.0 + am) / 2.0
    move = (1.0 - am) / 2.0
    return TransitionMatrix(np.array([[stay, move], [move, stay]]))

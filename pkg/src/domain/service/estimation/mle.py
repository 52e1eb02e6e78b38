"""
Оценка максимального правдоподобия матрицы переходов по одной цепи

- n_i считается по X_1..X_{n-1}: из последнего состояния переход не наблюдается
- непосещённое состояние получает единичную строку (P̂_ii = 1)
- счёт целочисленный, деление один раз при построении оценки
"""

from typing import Optional

import numpy as np
from scipy.linalg import block_diag

from ...entity.chain import Distribution, StateSequence, TransitionMatrix
from ...entity.estimate import AsymptoticCovariance, TransitionCounts, VectorizedMatrix
from ...errors import DimensionMismatchError, LengthNotSquareError, SequenceTooShortError
from ..chain.chain_core import STEADY_STATE_MAX_POWER, STEADY_STATE_TOL, steady_state


def count_transitions(seq: StateSequence) -> TransitionCounts:
    if seq.n < 2:
        raise SequenceTooShortError(seq.n)
    counts = count_transitions_batch(seq.states[None, :], seq.d)[0]
    return TransitionCounts(visits=counts.sum(axis=1), transitions=counts)


def count_transitions_batch(states: np.ndarray, d: int) -> np.ndarray:
    """
    n_ij для B цепей сразу: states B×n (0-based) → B×d×d целых счётчиков
    """
    B, n = states.shape
    if n < 2:
        raise SequenceTooShortError(n)
    pair_index = states[:, :-1] * d + states[:, 1:]
    offsets = (np.arange(B, dtype=np.int64) * d * d)[:, None]
    flat = np.bincount((pair_index + offsets).ravel(), minlength=B * d * d)
    return flat.reshape(B, d, d)


def estimate_from_counts(transitions: np.ndarray) -> np.ndarray:
    """
    Строки n_ij / n_i; строки с n_i = 0 заменяются единичными.
    Работает и для одной матрицы d×d, и для пачки B×d×d
    """
    transitions = np.asarray(transitions)
    d = transitions.shape[-1]
    visits = transitions.sum(axis=-1, keepdims=True)
    identity = np.broadcast_to(np.eye(d), transitions.shape)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratios = transitions / visits
    return np.where(visits > 0, ratios, identity)


def mle_estimate(seq: StateSequence) -> TransitionMatrix:
    counts = count_transitions(seq)
    return TransitionMatrix(estimate_from_counts(counts.transitions))


def mle_estimate_batch(states: np.ndarray, d: int) -> np.ndarray:
    """MLE для B цепей: B×n → B×d² (строка на vec(P̂*))"""
    estimates = estimate_from_counts(count_transitions_batch(states, d))
    return estimates.reshape(states.shape[0], d * d)


def observed_fraction(counts: TransitionCounts) -> float:
    """Доля из d² переходов, встретившихся хотя бы раз"""
    return float(np.count_nonzero(counts.transitions)) / counts.d**2


def estimate_steady_state(
    seq: StateSequence,
    tol: float = STEADY_STATE_TOL,
    max_power: int = STEADY_STATE_MAX_POWER,
) -> Distribution:
    """Π̂_n: стационарное распределение оценки P̂_n"""
    return steady_state(mle_estimate(seq), tol=tol, max_power=max_power)


def vectorize(P: TransitionMatrix) -> VectorizedMatrix:
    return VectorizedMatrix(P.entries.reshape(-1))


def devectorize(v: VectorizedMatrix) -> TransitionMatrix:
    length = len(v)
    d = v.d
    if length == 0 or d * d != length:
        raise LengthNotSquareError(length)
    return TransitionMatrix(v.values.reshape(d, d))


def asymptotic_covariance(
    P: TransitionMatrix, stationary: Optional[Distribution] = None
) -> AsymptoticCovariance:
    """
    (Σ_P)_(ij,kl) = δ_ik P_ij (δ_jl - P_il)

    Без stationary это ковариация √n_i (P̂_ij - P_ij) при нормировке строки
    числом её посещений. С stationary блок i делится на Π_i и описывает
    √n (P̂_v - P_v).
    """
    d = P.d
    if stationary is not None and stationary.d != d:
        raise DimensionMismatchError(d, stationary.d, "stationary distribution")

    blocks = []
    for i in range(d):
        row = P.entries[i]
        block = np.diag(row) - np.outer(row, row)
        if stationary is not None:
            block = block / stationary.probs[i]
        blocks.append(block)
    return AsymptoticCovariance(block_diag(*blocks))

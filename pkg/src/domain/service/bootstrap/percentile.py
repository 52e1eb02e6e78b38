"""
Эмпирическая функция распределения и процентильные интервалы Эфрона

x_L = max{x : F̂(x) <= alpha}, x_U = min{x : F̂(x) >= 1 - alpha} по значениям
выборки; концы интервала всегда порядковые статистики, без интерполяции.
Если ни одно значение не удовлетворяет F̂(x) <= alpha, x_L = min(values).
"""

from typing import List, Sequence

import numpy as np

from ...entity.bootstrap_result import BootstrapBatch, ConfidenceInterval, EmpiricalCDF
from ...errors import AlphaOutOfRangeError, EmptySampleError

# сравнения F̂ с alpha ведутся в единицах счётчика; допуск гасит ошибку 0.05*B и т.п.
_COUNT_EPS = 1e-9


def empirical_cdf(values: Sequence[float]) -> EmpiricalCDF:
    return EmpiricalCDF(np.asarray(values, dtype=np.float64))


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 0.5:
        raise AlphaOutOfRangeError(alpha)


def interval_from_sorted(sorted_values: np.ndarray, alpha: float) -> ConfidenceInterval:
    """Интервал по уже отсортированной выборке"""
    B = sorted_values.shape[0]
    if B == 0:
        raise EmptySampleError("bootstrap sample")
    counts = np.searchsorted(sorted_values, sorted_values, side="right")

    lower_mask = counts <= alpha * B + _COUNT_EPS
    lower = sorted_values[lower_mask][-1] if lower_mask.any() else sorted_values[0]

    upper_mask = counts >= (1.0 - alpha) * B - _COUNT_EPS
    upper = sorted_values[upper_mask][0]

    return ConfidenceInterval(lower=float(lower), upper=float(upper), alpha=alpha)


def percentile_ci(values: Sequence[float], alpha: float) -> ConfidenceInterval:
    _check_alpha(alpha)
    ecdf = empirical_cdf(values)
    return interval_from_sorted(ecdf.values, alpha)


def column_cis(estimates: np.ndarray, columns: Sequence[int], alpha: float) -> List[ConfidenceInterval]:
    """Интервалы для выбранных столбцов матрицы оценок B×d² (0-based позиции)"""
    _check_alpha(alpha)
    if estimates.shape[0] == 0:
        raise EmptySampleError("bootstrap sample")
    sorted_columns = np.sort(estimates[:, list(columns)], axis=0)
    return [interval_from_sorted(sorted_columns[:, k], alpha) for k in range(len(columns))]


def element_cis(batch: BootstrapBatch, alpha: float) -> List[List[ConfidenceInterval]]:
    """Сетка d×d интервалов; [i-1][j-1] для элемента (i, j)"""
    d = batch.d
    flat = column_cis(batch.estimates, range(d * d), alpha)
    return [flat[i * d : (i + 1) * d] for i in range(d)]

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..errors import (
    DimensionMismatchError,
    EmptySampleError,
    ParameterOutOfRangeError,
)
from .chain import Distribution, SeedSpec, TransitionMatrix, _frozen


@dataclass(frozen=True)
class BootstrapConfig:
    """Параметры бутстрэпа: B ресэмплов длины n из матрицы-генератора"""

    B: int
    n: int
    generator: TransitionMatrix
    initial: Optional[Distribution] = None
    seed: SeedSpec = field(default_factory=lambda: SeedSpec(0))

    def __post_init__(self) -> None:
        if self.B < 2:
            raise ParameterOutOfRangeError("B", self.B, "B >= 2 (covariance divisor B-1)")
        if self.n < 1:
            raise ParameterOutOfRangeError("n", self.n, "n >= 1")
        if self.initial is not None and self.initial.d != self.generator.d:
            raise DimensionMismatchError(self.generator.d, self.initial.d, "initial distribution")

    @property
    def initial_distribution(self) -> Distribution:
        return self.initial if self.initial is not None else Distribution.uniform(self.generator.d)


@dataclass(frozen=True, eq=False)
class EmpiricalCDF:
    """F̂(x) = #{values <= x} / B, правосторонне-непрерывная ступенчатая функция"""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.sort(np.asarray(self.values, dtype=np.float64).ravel(), kind="stable")
        if values.size == 0:
            raise EmptySampleError("ECDF sample")
        object.__setattr__(self, "values", _frozen(values, np.float64))

    @property
    def size(self) -> int:
        return int(self.values.shape[0])

    def count_le(self, x) -> np.ndarray:
        return np.searchsorted(self.values, x, side="right")

    def __call__(self, x):
        result = self.count_le(x) / self.size
        if np.ndim(result) == 0:
            return float(result)
        return result

    def pairs(self) -> List[Tuple[float, float]]:
        """Различные значения выборки и F̂ в них, по возрастанию"""
        unique = np.unique(self.values)
        probs = self.count_le(unique) / self.size
        return [(float(x), float(p)) for x, p in zip(unique, probs)]


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    alpha: float

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ParameterOutOfRangeError(
                "interval", (self.lower, self.upper), "lower <= upper"
            )

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True, eq=False)
class BootstrapBatch:
    """
    B векторизованных оценок P̂* (по строке на ресэмпл), их среднее
    и выборочная ковариация с делителем B-1
    """

    estimates: np.ndarray
    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "estimates", _frozen(self.estimates, np.float64))
        object.__setattr__(self, "mean", _frozen(self.mean, np.float64))
        object.__setattr__(self, "covariance", _frozen(self.covariance, np.float64))

    @classmethod
    def from_estimates(cls, estimates: np.ndarray) -> "BootstrapBatch":
        estimates = np.asarray(estimates, dtype=np.float64)
        if estimates.ndim != 2 or estimates.shape[0] < 2:
            raise ParameterOutOfRangeError("B", estimates.shape[0], "B >= 2")
        B = estimates.shape[0]
        mean = estimates.mean(axis=0)
        centered = estimates - mean
        covariance = centered.T @ centered / (B - 1)
        covariance = (covariance + covariance.T) / 2.0
        return cls(estimates, mean, covariance)

    @property
    def B(self) -> int:
        return int(self.estimates.shape[0])

    @property
    def d(self) -> int:
        return math.isqrt(self.estimates.shape[1])

    def mean_matrix(self) -> np.ndarray:
        return self.mean.reshape(self.d, self.d)

    def cell_values(self, i: int, j: int) -> np.ndarray:
        """Значения элемента (i, j) (1-based) по всем ресэмплам"""
        return self.estimates[:, (j - 1) + (i - 1) * self.d]

    def ecdf(self, i: int, j: int) -> EmpiricalCDF:
        return EmpiricalCDF(self.cell_values(i, j))

    def bias(self, reference: TransitionMatrix) -> np.ndarray:
        """Бутстрэп-оценка смещения: среднее P̂* минус vec(reference)"""
        if reference.d != self.d:
            raise DimensionMismatchError(self.d, reference.d)
        return self.mean - reference.entries.reshape(-1)

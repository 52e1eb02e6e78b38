"""
Сущности оценивания: счётчики переходов, vec(P), асимптотическая ковариация,
параметр сглаживания
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import ParameterOutOfRangeError
from .chain import _frozen


@dataclass(frozen=True, eq=False)
class TransitionCounts:
    """n_i по X_1..X_{n-1} и n_ij по соседним парам"""

    visits: np.ndarray
    transitions: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "visits", _frozen(self.visits, np.int64))
        object.__setattr__(self, "transitions", _frozen(self.transitions, np.int64))

    @property
    def d(self) -> int:
        return int(self.visits.shape[0])

    @property
    def total(self) -> int:
        """Число наблюдённых переходов, n-1"""
        return int(self.visits.sum())

    @property
    def unvisited(self) -> np.ndarray:
        return np.flatnonzero(self.visits == 0)


@dataclass(frozen=True, eq=False)
class VectorizedMatrix:
    """vec(P): P_ij лежит на позиции j + (i-1)d (1-based)"""

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values, np.float64))

    @property
    def d(self) -> int:
        return math.isqrt(self.values.shape[0])

    @staticmethod
    def position(i: int, j: int, d: int) -> int:
        """1-based позиция элемента (i, j) в vec(P)"""
        return j + (i - 1) * d

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorizedMatrix):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class AsymptoticCovariance:
    """
    Σ_P размера d²×d²: строка j+(i-1)d, столбец l+(k-1)d.
    Блочно-диагональна по (i, k), каждый блок diag(P_i) - P_i P_i'
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _frozen(self.entries, np.float64))

    @property
    def d(self) -> int:
        return math.isqrt(self.entries.shape[0])

    def entry(self, i: int, j: int, k: int, l: int) -> float:
        """Элемент (ij, kl) по 1-based индексам"""
        d = self.d
        return float(self.entries[(j - 1) + (i - 1) * d, (l - 1) + (k - 1) * d])

    def block(self, i: int) -> np.ndarray:
        """Диагональный блок строки i (1-based)"""
        d = self.d
        start = (i - 1) * d
        return self.entries[start : start + d, start : start + d]


@dataclass(frozen=True)
class SmoothingParam:
    """u > 0 или u = ∞ (стандартный бутстрэп без сглаживания)"""

    u: float

    def __post_init__(self) -> None:
        value = float(self.u)
        if math.isnan(value) or value <= 0.0:
            raise ParameterOutOfRangeError("u", self.u, "u > 0 or inf")
        object.__setattr__(self, "u", value)

    @classmethod
    def infinite(cls) -> "SmoothingParam":
        return cls(math.inf)

    @classmethod
    def parse(cls, raw: Union[str, float, int, "SmoothingParam"]) -> "SmoothingParam":
        if isinstance(raw, SmoothingParam):
            return raw
        if isinstance(raw, str):
            text = raw.strip().lower()
            if text in ("inf", "infinity", "∞", "none"):
                return cls.infinite()
            try:
                return cls(float(text))
            except ValueError:
                raise ParameterOutOfRangeError("u", raw, "a positive number or 'inf'")
        return cls(float(raw))

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.u)

    @property
    def label(self) -> str:
        if self.is_infinite:
            return "inf"
        return f"{self.u:g}"

    def __str__(self) -> str:
        return self.label

"""
Базовые сущности цепи Маркова: матрица переходов, последовательность состояний,
распределение и спецификация случайного потока
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatchError, ParameterOutOfRangeError, RowSumViolationError

MASK64 = (1 << 64) - 1


def _frozen(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """
    Стохастическая по строкам матрица d×d

    Конструктор не проверяет инварианты: проверенные матрицы создаются через
    chain_core.validate_matrix, оценки (MLE, сглаживание) стохастичны по построению.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _frozen(self.entries, np.float64))

    @property
    def d(self) -> int:
        return int(self.entries.shape[0])

    def __getitem__(self, index):
        return self.entries[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None

    def cumulative(self) -> np.ndarray:
        """Накопленные строки; последний столбец принудительно равен 1"""
        cum = np.cumsum(self.entries, axis=1)
        cum[:, -1] = 1.0
        return cum

    def max_abs_diff(self, other: "TransitionMatrix") -> float:
        if other.d != self.d:
            raise DimensionMismatchError(self.d, other.d)
        return float(np.max(np.abs(self.entries - other.entries)))


@dataclass(frozen=True, eq=False)
class Distribution:
    """Распределение вероятностей на {1..d} (V_1, V_k, Π)"""

    probs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", _frozen(self.probs, np.float64))

    @classmethod
    def from_probs(cls, probs: Iterable[float], tolerance: float = 1e-9) -> "Distribution":
        values = np.asarray(list(probs), dtype=np.float64)
        if values.ndim != 1 or values.size == 0:
            raise ParameterOutOfRangeError("initial", values.tolist(), "a non-empty vector")
        if np.any(~np.isfinite(values)) or np.any(values < 0.0) or np.any(values > 1.0):
            raise ParameterOutOfRangeError("initial", values.tolist(), "entries in [0, 1]")
        total = float(values.sum())
        if abs(total - 1.0) > tolerance:
            raise RowSumViolationError(0, total)
        return cls(values / total)

    @classmethod
    def uniform(cls, d: int) -> "Distribution":
        if d < 1:
            raise ParameterOutOfRangeError("d", d, "d >= 1")
        return cls(np.full(d, 1.0 / d))

    @classmethod
    def point_mass(cls, d: int, state: int) -> "Distribution":
        """Точечная масса на состоянии state (1-based)"""
        if not 1 <= state <= d:
            raise ParameterOutOfRangeError("state", state, f"1..{d}")
        probs = np.zeros(d)
        probs[state - 1] = 1.0
        return cls(probs)

    @property
    def d(self) -> int:
        return int(self.probs.shape[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    __hash__ = None

    def cumulative(self) -> np.ndarray:
        cum = np.cumsum(self.probs)
        cum[-1] = 1.0
        return cum


@dataclass(frozen=True, eq=False)
class StateSequence:
    """
    Наблюдения X_1..X_n. Внутри хранятся 0-based индексы,
    во всех форматах ввода/вывода состояния 1-based
    """

    states: np.ndarray
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", _frozen(self.states, np.int64))

    @classmethod
    def from_one_based(cls, values: Sequence[int], d: int) -> "StateSequence":
        if d < 1:
            raise ParameterOutOfRangeError("d", d, "d >= 1")
        states = np.asarray(list(values), dtype=np.int64)
        if states.ndim != 1 or states.size == 0:
            raise ParameterOutOfRangeError("sequence", list(values), "at least one state")
        bad = np.flatnonzero((states < 1) | (states > d))
        if bad.size:
            k = int(bad[0])
            raise ParameterOutOfRangeError(f"X_{k + 1}", int(states[k]), f"1..{d}")
        return cls(states - 1, d)

    @property
    def n(self) -> int:
        return int(self.states.shape[0])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateSequence):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.states, other.states)

    __hash__ = None

    def one_based(self) -> List[int]:
        return (self.states + 1).tolist()


@dataclass(frozen=True)
class SeedSpec:
    """
    (master_seed, stream_id) однозначно задаёт случайный поток.
    prefix хранит путь порождения для вложенных задач (study → репликация → ресэмпл)
    """

    master_seed: int
    stream_id: int = 0
    prefix: Tuple[int, ...] = field(default_factory=tuple)

    def spawn(self, stream_id: int) -> "SeedSpec":
        """Дочерний поток, независимый от соседних stream_id"""
        return SeedSpec(self.master_seed, stream_id, self.prefix + (self.stream_id,))

    @property
    def entropy(self) -> int:
        return self.master_seed & MASK64

    @property
    def spawn_key(self) -> Tuple[int, ...]:
        return tuple(k & MASK64 for k in self.prefix + (self.stream_id,))

"""
Иерархия ошибок домена цепей Маркова
Все индексы в ошибках 0-based (строка, столбец)
"""

from typing import Optional


class MarkovChainError(ValueError):
    """Базовая ошибка валидации и вычислений"""


class NonSquareError(MarkovChainError):
    def __init__(self, shape: tuple):
        self.shape = shape
        super().__init__(f"NonSquare: matrix shape {shape} is not d×d")


class NegativeEntryError(MarkovChainError):
    def __init__(self, i: int, j: int, value: float):
        self.i = i
        self.j = j
        self.value = value
        super().__init__(f"NegativeEntry({i}, {j}): {value!r}")


class EntryOutOfRangeError(MarkovChainError):
    """Элемент больше 1 или не является конечным числом"""

    def __init__(self, i: int, j: int, value: float):
        self.i = i
        self.j = j
        self.value = value
        super().__init__(f"EntryOutOfRange({i}, {j}): {value!r}")


class RowSumViolationError(MarkovChainError):
    def __init__(self, i: int, row_sum: float):
        self.i = i
        self.row_sum = row_sum
        super().__init__(f"RowSumViolation({i}, {row_sum:.12g})")


class DimensionMismatchError(MarkovChainError):
    def __init__(self, expected: int, actual: int, what: str = "dimension"):
        self.expected = expected
        self.actual = actual
        super().__init__(f"DimensionMismatch: {what} {actual} != {expected}")


class ParameterOutOfRangeError(MarkovChainError):
    def __init__(self, name: str, value, allowed: str):
        self.name = name
        self.value = value
        super().__init__(f"ParameterOutOfRange: {name}={value!r}, expected {allowed}")


class SequenceTooShortError(MarkovChainError):
    def __init__(self, n: int, minimum: int = 2):
        self.n = n
        super().__init__(f"SequenceTooShort: n={n}, at least {minimum} observations required")


class LengthNotSquareError(MarkovChainError):
    def __init__(self, length: int):
        self.length = length
        super().__init__(f"LengthNotSquare: vector length {length} is not d²")


class EmptySampleError(MarkovChainError):
    def __init__(self, what: str = "sample"):
        super().__init__(f"EmptySample: {what} is empty")


class AlphaOutOfRangeError(MarkovChainError):
    def __init__(self, alpha: float):
        self.alpha = alpha
        super().__init__(f"AlphaOutOfRange: alpha={alpha!r}, expected 0 < alpha < 0.5")


class InvalidConfigError(MarkovChainError):
    def __init__(self, message: str, source: Optional[str] = None):
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(f"InvalidConfig: {prefix}{message}")


class NoLimitError(MarkovChainError):
    """P^m не сходится к матрице с одинаковыми строками"""

    def __init__(self, power: int, divergence: float):
        self.power = power
        self.divergence = divergence
        super().__init__(
            f"NoLimit: rows of P^{power} still differ by {divergence:.3g} "
            f"(periodic or reducible chain)"
        )


class MalformedFileError(MarkovChainError):
    """Файл матрицы, последовательности или конфигурации не разбирается"""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"Malformed file {path}: {reason}")

"""
Пул воркеров для независимых вычислительных задач (joblib)
Результаты всегда возвращаются в порядке индексов задач
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterable, List, Sequence

from joblib import Parallel, delayed

logger = logging.getLogger(__name__)


@dataclass
class PoolStats:
    """Статистика пула"""

    batches: int = 0
    tasks: int = 0


class WorkerPool:
    """
    Обёртка над joblib.Parallel

    workers = 1 выполняет задачи в текущем процессе,
    workers > 1 использует loky (процессы). Задачи обязаны быть чистыми
    функциями своих аргументов.
    """

    def __init__(self, workers: int = 1, backend: str = "loky", batch_size: Any = "auto"):
        """
        Args:
            workers: Число воркеров (>= 1)
            backend: Бэкенд joblib для workers > 1
            batch_size: Размер пакета задач joblib
        """
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self.workers = workers
        self.backend = backend
        self.batch_size = batch_size
        self.stats = PoolStats()

    @property
    def is_serial(self) -> bool:
        return self.workers == 1

    def map(self, func: Callable, items: Iterable) -> List:
        """Применяет func к каждому элементу, порядок результатов как у items"""
        items = list(items)
        self.stats.batches += 1
        self.stats.tasks += len(items)

        if self.is_serial or len(items) <= 1:
            return [func(item) for item in items]

        logger.debug(f"dispatching {len(items)} tasks to {self.workers} workers ({self.backend})")
        runner = Parallel(n_jobs=self.workers, backend=self.backend, batch_size=self.batch_size)
        return runner(delayed(func)(item) for item in items)

    def starmap(self, func: Callable, arg_tuples: Sequence[tuple]) -> List:
        return self.map(_Star(func), arg_tuples)


class _Star:
    """Распаковка аргументов; класс вместо lambda, чтобы loky мог его сериализовать"""

    def __init__(self, func: Callable):
        self.func = func

    def __call__(self, args: tuple):
        return self.func(*args)


def chunk_indices(start: int, stop: int, chunk_size: int) -> List[range]:
    """Разбивает [start, stop) на последовательные диапазоны"""
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
    return [range(s, min(s + chunk_size, stop)) for s in range(start, stop, chunk_size)]

"""
Детерминированные случайные потоки

Каждая логическая задача получает поток по SeedSpec: SeedSequence(master_seed,
spawn_key=prefix + (stream_id,)) → PCG64. Поток зависит только от ключа,
а не от порядка выполнения, поэтому последовательный и параллельный запуск
дают одинаковые биты.
"""

from typing import Sequence

import numpy as np

from ...entity.chain import SeedSpec


def make_generator(seed: SeedSpec) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed.entropy, spawn_key=seed.spawn_key)
    return np.random.Generator(np.random.PCG64(sequence))


def draw_uniforms(seeds: Sequence[SeedSpec], n: int) -> np.ndarray:
    """
    Матрица len(seeds)×n равномерных чисел из [0, 1): строка b из потока seeds[b].
    Столбец 0 выбирает X_1, столбец k выбирает X_{k+1}
    """
    uniforms = np.empty((len(seeds), n), dtype=np.float64)
    for b, seed in enumerate(seeds):
        uniforms[b] = make_generator(seed).random(n)
    return uniforms

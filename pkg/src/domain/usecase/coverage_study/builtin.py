"""Встроенные истинные матрицы исследования покрытия"""

from typing import Dict

import numpy as np

from ...entity.chain import TransitionMatrix
from ...service.chain.chain_core import validate_matrix

P_I_ROWS = [
    [0.4, 0.3, 0.3],
    [0.3, 0.4, 0.3],
    [0.3, 0.3, 0.4],
]

P_II_ROWS = [
    [2 / 20, 9 / 20, 9 / 20],
    [9 / 20, 2 / 20, 9 / 20],
    [9 / 20, 9 / 20, 2 / 20],
]

EQ8_ROWS = [
    [0.25, 0.25, 0.25, 0.25],
    [0.10, 0.20, 0.20, 0.50],
    [0.05, 0.10, 0.10, 0.75],
    [0.10, 0.20, 0.30, 0.40],
]

_BUILTIN_ROWS = {
    "P_I": P_I_ROWS,
    "P_II": P_II_ROWS,
    "Eq8": EQ8_ROWS,
}

# допустимые написания имён в конфигурациях и CLI
ALIASES = {
    "p_i": "P_I",
    "pi": "P_I",
    "p_ii": "P_II",
    "pii": "P_II",
    "eq8": "Eq8",
}


def builtin_matrices() -> Dict[str, TransitionMatrix]:
    return {name: validate_matrix(np.array(rows)) for name, rows in _BUILTIN_ROWS.items()}


def canonical_name(name: str) -> str:
    """Каноническое имя встроенной матрицы или KeyError"""
    if name in _BUILTIN_ROWS:
        return name
    return ALIASES[name.strip().lower()]

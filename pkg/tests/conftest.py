"""Общие фикстуры тестов"""

import os
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from src.domain.entity.chain import SeedSpec, TransitionMatrix
from src.domain.service.chain.chain_core import validate_matrix
from src.domain.usecase.coverage_study.builtin import EQ8_ROWS, builtin_matrices

PROJECT_ROOT = Path(__file__).parent.parent
DATA_DIR = PROJECT_ROOT / "data"

# MLE по цепи длины 100 (посещения 9, 14, 27, 49)
SEC7_PHAT_FRACTIONS = [
    [Fraction(1, 9), Fraction(2, 9), Fraction(2, 9), Fraction(4, 9)],
    [Fraction(1, 7), Fraction(1, 7), Fraction(5, 14), Fraction(5, 14)],
    [Fraction(0), Fraction(1, 27), Fraction(5, 27), Fraction(7, 9)],
    [Fraction(6, 49), Fraction(9, 49), Fraction(2, 7), Fraction(20, 49)],
]

SEC7_PTILDE_PRINTED = [
    [0.150794, 0.230159, 0.230159, 0.388889],
    [0.173469, 0.173469, 0.326531, 0.326531],
    [0.071429, 0.097884, 0.203704, 0.626984],
    [0.158892, 0.202624, 0.275510, 0.362974],
]


def pytest_collection_modifyitems(config, items):
    if os.getenv("RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="set RUN_SLOW=1 to run full-scale studies")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def eq8() -> TransitionMatrix:
    return validate_matrix(np.array(EQ8_ROWS))


@pytest.fixture
def p_i() -> TransitionMatrix:
    return builtin_matrices()["P_I"]


@pytest.fixture
def p_ii() -> TransitionMatrix:
    return builtin_matrices()["P_II"]


@pytest.fixture
def sec7_phat() -> TransitionMatrix:
    return TransitionMatrix(np.array([[float(x) for x in row] for row in SEC7_PHAT_FRACTIONS]))


@pytest.fixture
def sec7_ptilde_printed() -> np.ndarray:
    return np.array(SEC7_PTILDE_PRINTED)


@pytest.fixture
def seed() -> SeedSpec:
    return SeedSpec(20240601)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def write_matrix(tmp_path):
    """Пишет матрицу во временный CSV и возвращает путь"""

    def _write(rows, name="matrix.csv") -> Path:
        path = tmp_path / name
        path.write_text("\n".join(",".join(repr(float(x)) for x in row) for row in rows) + "\n")
        return path

    return _write

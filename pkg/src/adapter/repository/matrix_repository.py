"""
Репозиторий файлов матриц и последовательностей

Матрица: CSV (строка на строку матрицы, d десятичных чисел через запятую)
или JSON {"d": d, "rows": [[...], ...]}.
Последовательность: CSV из 1-based состояний в одну строку.
"""

import json
import logging
from pathlib import Path
from typing import Union

import numpy as np

from ...domain.entity.chain import StateSequence, TransitionMatrix
from ...domain.errors import DimensionMismatchError, MalformedFileError
from ...domain.service.chain.chain_core import ROW_SUM_TOLERANCE, validate_matrix

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def write_text(text: str, path: PathLike) -> None:
    """Пишет текст в файл; каталоги создаются при необходимости"""
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


class MatrixRepository:
    def __init__(self, decimals: int = 6, row_sum_tolerance: float = ROW_SUM_TOLERANCE):
        self.decimals = decimals
        self.row_sum_tolerance = row_sum_tolerance

    def load_raw(self, path: PathLike) -> np.ndarray:
        """Читает матрицу без проверки стохастичности"""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"matrix file not found: {path}")

        text = path.read_text(encoding="utf-8")
        if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
            return self._parse_json(text, str(path))

        try:
            rows = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
        except ValueError as e:
            raise MalformedFileError(str(path), str(e))
        return rows

    def _parse_json(self, text: str, source: str) -> np.ndarray:
        try:
            data = json.loads(text)
            rows = np.array(data["rows"], dtype=np.float64)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise MalformedFileError(source, f"expected {{'d': d, 'rows': [...]}}: {e}")
        d = data.get("d")
        if d is not None and rows.ndim >= 1 and int(d) != rows.shape[0]:
            raise DimensionMismatchError(int(d), rows.shape[0], "rows")
        return rows

    def load_matrix(self, path: PathLike) -> TransitionMatrix:
        matrix = validate_matrix(self.load_raw(path), tolerance=self.row_sum_tolerance)
        logger.debug(f"loaded {matrix.d}x{matrix.d} matrix from {path}")
        return matrix

    def dump_matrix(self, entries, fmt: str = "csv") -> str:
        """Матрица (TransitionMatrix или массив) в текст с фиксированным числом знаков"""
        values = entries.entries if isinstance(entries, TransitionMatrix) else np.asarray(entries)
        if fmt == "json":
            rows = [[round(float(x), self.decimals) for x in row] for row in values]
            return json.dumps({"d": len(rows), "rows": rows}) + "\n"
        lines = [",".join(f"{float(x):.{self.decimals}f}" for x in row) for row in values]
        return "\n".join(lines) + "\n"

    def load_sequence(self, path: PathLike, d: int) -> StateSequence:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"sequence file not found: {path}")
        text = path.read_text(encoding="utf-8")
        tokens = [t for t in text.replace("\n", ",").replace(" ", ",").split(",") if t.strip()]
        try:
            values = [int(t) for t in tokens]
        except ValueError as e:
            raise MalformedFileError(str(path), f"expected comma-separated integers: {e}")
        return StateSequence.from_one_based(values, d)

    def dump_sequence(self, seq: StateSequence) -> str:
        return ",".join(str(s) for s in seq.one_based()) + "\n"

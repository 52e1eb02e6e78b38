"""
Репозиторий JSON-конфигураций исследования покрытия
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from ...domain.entity.chain import SeedSpec, TransitionMatrix
from ...domain.entity.coverage_report import StudyConfig
from ...domain.entity.estimate import SmoothingParam
from ...domain.errors import InvalidConfigError, MalformedFileError
from ...domain.usecase.coverage_study.builtin import builtin_matrices, canonical_name
from .matrix_repository import MatrixRepository

logger = logging.getLogger(__name__)


class StudyConfigFile(BaseModel):
    """Схема файла конфигурации исследования"""

    model_config = ConfigDict(extra="forbid")

    truth: Union[str, List[str]]
    n_grid: List[int] = [25, 50, 100]
    u_grid: List[Union[str, float]] = ["0.5", "1", "2", "inf"]
    B: Optional[int] = None
    R: Optional[int] = None
    preset: Optional[Literal["desk", "full"]] = None
    nominal: float = 0.90
    cells: List[Tuple[int, int]] = [(1, 1), (1, 2)]
    seed: Optional[int] = None

    @field_validator("u_grid")
    @classmethod
    def _check_u_grid(cls, values):
        for value in values:
            SmoothingParam.parse(value)
        return values

    @property
    def truths(self) -> List[str]:
        return [self.truth] if isinstance(self.truth, str) else list(self.truth)


class StudyConfigRepository:
    def __init__(
        self,
        matrix_repo: MatrixRepository,
        presets: Dict[str, Tuple[int, int]],
        default_seed: int,
        data_dir: Optional[Path] = None,
    ):
        """
        Args:
            matrix_repo: Чтение матриц, заданных путём
            presets: {"desk": (B, R), "full": (B, R)}
            default_seed: Seed, если в файле он не указан
            data_dir: Каталог встроенных данных для поиска относительных путей
        """
        self.matrix_repo = matrix_repo
        self.presets = presets
        self.default_seed = default_seed
        self.data_dir = data_dir

    def parse(self, path: Path) -> StudyConfigFile:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"study config not found: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise MalformedFileError(str(path), str(e))
        try:
            return StudyConfigFile.model_validate(data)
        except ValidationError as e:
            raise InvalidConfigError(str(e).replace("\n", "; "), source=str(path))

    def resolve_truth(self, name: str, search_dirs: Sequence[Path]) -> Tuple[str, TransitionMatrix]:
        """Имя встроенной матрицы или путь к файлу матрицы"""
        try:
            canonical = canonical_name(name)
            return canonical, builtin_matrices()[canonical]
        except KeyError:
            pass
        candidate = Path(name)
        candidates = [candidate] if candidate.is_absolute() else [d / candidate for d in search_dirs]
        for option in candidates:
            if option.exists():
                return candidate.stem, self.matrix_repo.load_matrix(option)
        raise InvalidConfigError(f"truth '{name}' is neither a built-in matrix nor an existing file")

    def load(
        self,
        path: Path,
        seed: Optional[int] = None,
        preset: Optional[str] = None,
    ) -> List[StudyConfig]:
        """
        Читает файл и возвращает по StudyConfig на каждую истинную матрицу

        Приоритет B/R: аргумент preset, затем явные B и R файла, затем его поле
        preset, затем "desk"
        """
        path = Path(path)
        spec = self.parse(path)

        preset_name = preset or spec.preset or "desk"
        if preset_name not in self.presets:
            raise InvalidConfigError(f"unknown preset '{preset_name}'", source=str(path))
        preset_B, preset_R = self.presets[preset_name]
        B = spec.B if spec.B is not None else preset_B
        R = spec.R if spec.R is not None else preset_R
        if preset is not None:
            B, R = preset_B, preset_R

        master_seed = seed if seed is not None else (spec.seed if spec.seed is not None else self.default_seed)
        search_dirs = [path.parent] + ([self.data_dir] if self.data_dir else [])

        configs = []
        for truth in spec.truths:
            name, matrix = self.resolve_truth(truth, search_dirs)
            configs.append(
                StudyConfig(
                    truth=matrix,
                    truth_name=name,
                    n_grid=tuple(spec.n_grid),
                    u_grid=tuple(SmoothingParam.parse(u) for u in spec.u_grid),
                    B=B,
                    R=R,
                    nominal=spec.nominal,
                    tracked_cells=tuple(spec.cells),
                    seed=SeedSpec(master_seed),
                )
            )
        logger.info(f"[OK] study config {path.name}: {len(configs)} truth matrices, B={B}, R={R}")
        return configs

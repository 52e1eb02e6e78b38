from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from ..errors import InvalidConfigError
from .chain import Distribution, SeedSpec, TransitionMatrix
from .estimate import SmoothingParam

Cell = Tuple[int, int]


@dataclass(frozen=True)
class StudyConfig:
    """
    Конфигурация исследования покрытия: истинная матрица, сетки n и u,
    B ресэмплов на репликацию, R репликаций, номинальный уровень.
    Ячейки tracked_cells 1-based
    """

    truth: TransitionMatrix
    n_grid: Tuple[int, ...]
    u_grid: Tuple[SmoothingParam, ...]
    B: int
    R: int
    nominal: float = 0.90
    tracked_cells: Tuple[Cell, ...] = ((1, 1), (1, 2))
    seed: SeedSpec = field(default_factory=lambda: SeedSpec(0))
    truth_name: str = "custom"
    initial: Optional[Distribution] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        object.__setattr__(
            self, "u_grid", tuple(SmoothingParam.parse(u) for u in self.u_grid)
        )
        object.__setattr__(
            self, "tracked_cells", tuple((int(i), int(j)) for i, j in self.tracked_cells)
        )

        if not self.n_grid or not self.u_grid or not self.tracked_cells:
            raise InvalidConfigError("n_grid, u_grid and cells must be non-empty")
        if any(n < 2 for n in self.n_grid):
            raise InvalidConfigError(f"chain lengths must be >= 2, got {list(self.n_grid)}")
        if self.R < 1:
            raise InvalidConfigError(f"R must be >= 1, got {self.R}")
        if self.B < 2:
            raise InvalidConfigError(f"B must be >= 2, got {self.B}")
        if not 0.0 < self.nominal < 1.0:
            raise InvalidConfigError(f"nominal must lie in (0, 1), got {self.nominal}")
        d = self.truth.d
        for i, j in self.tracked_cells:
            if not (1 <= i <= d and 1 <= j <= d):
                raise InvalidConfigError(f"cell ({i}, {j}) outside 1..{d}")
        if self.initial is not None and self.initial.d != d:
            raise InvalidConfigError(f"initial distribution has {self.initial.d} states, truth has {d}")

    @property
    def alpha(self) -> float:
        """Уровень на один хвост: номинал 90% → alpha = 0.05"""
        return (1.0 - self.nominal) / 2.0

    @property
    def initial_distribution(self) -> Distribution:
        return self.initial if self.initial is not None else Distribution.uniform(self.truth.d)


@dataclass(frozen=True)
class CoverageCell:
    """Эмпирическое покрытие одной ячейки в одном плече (n, u)"""

    truth: str
    n: int
    u: SmoothingParam
    cell: Cell
    coverage: float
    mean_width: float
    replications: int


@dataclass(frozen=True)
class CoverageReport:
    nominal: float
    cells: Tuple[CoverageCell, ...] = ()

    def __iter__(self):
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def truths(self) -> List[str]:
        return list(dict.fromkeys(c.truth for c in self.cells))

    @property
    def tracked_cells(self) -> List[Cell]:
        return list(dict.fromkeys(c.cell for c in self.cells))

    def arms(self) -> List[Tuple[str, int, SmoothingParam]]:
        """Плечи (truth, n, u) в порядке вычисления"""
        return list(dict.fromkeys((c.truth, c.n, c.u) for c in self.cells))

    def get(self, n: int, u, cell: Cell, truth: Optional[str] = None) -> CoverageCell:
        u = SmoothingParam.parse(u)
        for c in self.cells:
            if c.n == n and c.u == u and c.cell == tuple(cell) and (truth is None or c.truth == truth):
                return c
        raise KeyError((truth, n, u.label, cell))

    def coverage(self, n: int, u, cell: Cell, truth: Optional[str] = None) -> float:
        return self.get(n, u, cell, truth).coverage

    @classmethod
    def merge(cls, reports: Iterable["CoverageReport"]) -> "CoverageReport":
        reports = list(reports)
        if not reports:
            raise InvalidConfigError("nothing to merge")
        cells: List[CoverageCell] = []
        for report in reports:
            cells.extend(report.cells)
        return cls(nominal=reports[0].nominal, cells=tuple(cells))

    def by_arm(self) -> Dict[Tuple[str, int, SmoothingParam], Dict[Cell, CoverageCell]]:
        grouped: Dict[Tuple[str, int, SmoothingParam], Dict[Cell, CoverageCell]] = {}
        for c in self.cells:
            grouped.setdefault((c.truth, c.n, c.u), {})[c.cell] = c
        return grouped

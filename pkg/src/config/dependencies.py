"""
Сборка сервисов из конфигурации
Связывает репозитории, пул воркеров и use case исследования
"""

import logging
from dataclasses import dataclass
from typing import Optional

from ..adapter.repository.matrix_repository import MatrixRepository
from ..adapter.repository.report_repository import ReportRepository
from ..adapter.repository.study_config_repository import StudyConfigRepository
from ..domain.usecase.coverage_study.run_study import RunStudyUseCase
from ..lib.clients.worker_pool import WorkerPool
from .config import Config

logger = logging.getLogger(__name__)


@dataclass
class Services:
    """Контейнер сервисов одного запуска CLI"""

    config: Config
    pool: WorkerPool
    matrix_repo: MatrixRepository
    study_config_repo: StudyConfigRepository
    report_repo: ReportRepository
    study_usecase: RunStudyUseCase

    @property
    def seed(self) -> int:
        return self.config.runtime.seed


def setup_services(
    config: Config,
    workers: Optional[int] = None,
    decimals: Optional[int] = None,
) -> Services:
    """
    Args:
        config: Загруженная конфигурация
        workers: Число воркеров (перекрывает runtime.workers)
        decimals: Знаков после запятой в выводе (перекрывает output.float_decimals)
    """
    workers = workers if workers is not None else config.runtime.workers
    decimals = decimals if decimals is not None else config.output.float_decimals

    pool = WorkerPool(workers)
    matrix_repo = MatrixRepository(
        decimals=decimals,
        row_sum_tolerance=config.estimation.row_sum_tolerance,
    )
    study_config_repo = StudyConfigRepository(
        matrix_repo=matrix_repo,
        presets={name: (p.B, p.R) for name, p in config.study_presets.items()},
        default_seed=config.runtime.seed,
        data_dir=config.output.data_path,
    )

    services = Services(
        config=config,
        pool=pool,
        matrix_repo=matrix_repo,
        study_config_repo=study_config_repo,
        report_repo=ReportRepository(decimals=decimals),
        study_usecase=RunStudyUseCase(pool),
    )
    logger.debug(f"services ready: workers={workers}, decimals={decimals}")
    return services

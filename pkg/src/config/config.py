"""
Конфигурационные классы
Значения из config/<ENVIRONMENT>.yaml, плейсхолдеры ${VAR} и ${VAR:-default}
подставляются из окружения
"""

import os
import re
import yaml
from typing import Dict, Any, Optional
from pathlib import Path
from dataclasses import dataclass, field

PROJECT_ROOT = Path(__file__).parent.parent.parent

DEFAULT_SEED = 20240601


@dataclass
class EstimationConfig:
    row_sum_tolerance: float = 1e-9


@dataclass
class SteadyStateConfig:
    tol: float = 1e-10
    max_power: int = 2**40


@dataclass
class BootstrapDefaults:
    """Параметры бутстрэпа по умолчанию для CLI"""

    B: int = 1000
    alpha: float = 0.05
    chunk_size: int = 250


@dataclass
class StudyPreset:
    B: int
    R: int


@dataclass
class RuntimeConfig:
    seed: int = DEFAULT_SEED
    workers: int = 1


@dataclass
class OutputConfig:
    float_decimals: int = 6
    data_dir: str = "data"

    @property
    def data_path(self) -> Path:
        path = Path(self.data_dir)
        return path if path.is_absolute() else PROJECT_ROOT / path


@dataclass
class Config:
    """Основная конфигурация"""

    logging: Dict[str, Any]
    estimation: EstimationConfig = field(default_factory=EstimationConfig)
    steady_state: SteadyStateConfig = field(default_factory=SteadyStateConfig)
    bootstrap: BootstrapDefaults = field(default_factory=BootstrapDefaults)
    study_presets: Dict[str, StudyPreset] = field(default_factory=dict)
    runtime: RuntimeConfig = field(default_factory=RuntimeConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @property
    def log_level(self) -> str:
        return str(self.logging.get("level", "INFO"))


def load_config(env: Optional[str] = None, config_dir: Optional[Path] = None) -> Config:
    """Загрузить конфигурацию для указанного окружения"""
    if env is None:
        env = os.getenv("ENVIRONMENT", "development")

    config_dir = config_dir or PROJECT_ROOT / "config"
    config_file = config_dir / f"{env}.yaml"

    if not config_file.exists():
        return _create_default_config()

    with open(config_file, "r", encoding="utf-8") as f:
        config_data = yaml.safe_load(f) or {}

    config_data = _substitute_env_variables(config_data)

    runtime_data = config_data.get("runtime", {})
    runtime_config = RuntimeConfig(
        seed=_parse_int(runtime_data.get("seed"), DEFAULT_SEED),
        workers=_parse_int(runtime_data.get("workers"), 1),
    )

    steady_data = config_data.get("steady_state", {})
    steady_config = SteadyStateConfig(
        tol=float(steady_data.get("tol", 1e-10)),
        max_power=int(steady_data.get("max_power", 2**40)),
    )

    presets = {
        name: StudyPreset(B=int(values["B"]), R=int(values["R"]))
        for name, values in config_data.get("study", {}).get("presets", {}).items()
    }
    if not presets:
        presets = _default_presets()

    return Config(
        logging=config_data.get("logging", {}),
        estimation=EstimationConfig(**config_data.get("estimation", {})),
        steady_state=steady_config,
        bootstrap=BootstrapDefaults(**config_data.get("bootstrap", {})),
        study_presets=presets,
        runtime=runtime_config,
        output=OutputConfig(**config_data.get("output", {})),
    )


_PLACEHOLDER = re.compile(r"^\$\{(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?::-(?P<default>.*))?\}$")


def _substitute_env_variables(data: Any) -> Any:
    """Заменяет ${VAR} и ${VAR:-default} на значения переменных окружения"""
    if isinstance(data, dict):
        return {key: _substitute_env_variables(value) for key, value in data.items()}
    elif isinstance(data, list):
        return [_substitute_env_variables(item) for item in data]
    elif isinstance(data, str):
        match = _PLACEHOLDER.match(data)
        if not match:
            return data
        value = os.getenv(match.group("name"))
        if value is not None and value != "":
            return value
        default = match.group("default")
        return default if default is not None else data
    else:
        return data


def _parse_int(value: Any, default: int) -> int:
    """Парсит int; неподставленный плейсхолдер или пустая строка дают default"""
    if value is None:
        return default
    if isinstance(value, str):
        value = value.strip()
        if not value or value.startswith("${"):
            return default
    try:
        return int(value)
    except ValueError:
        return default


def _default_presets() -> Dict[str, StudyPreset]:
    return {"desk": StudyPreset(B=1000, R=300), "full": StudyPreset(B=5000, R=1000)}


def _create_default_config() -> Config:
    """Создать конфигурацию по умолчанию из переменных окружения"""
    return Config(
        logging={"level": os.getenv("LOG_LEVEL", "INFO")},
        study_presets=_default_presets(),
        runtime=RuntimeConfig(
            seed=_parse_int(os.getenv("MARKOV_SMOOTH_SEED"), DEFAULT_SEED),
            workers=_parse_int(os.getenv("MARKOV_SMOOTH_WORKERS"), 1),
        ),
    )

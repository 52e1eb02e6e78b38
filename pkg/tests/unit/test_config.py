"""Загрузка YAML-конфигурации и подстановка переменных окружения"""

import textwrap

import pytest

from src.config.config import DEFAULT_SEED, _substitute_env_variables, load_config
from src.config.dependencies import setup_services

YAML = textwrap.dedent(
    """
    logging:
      level: "${TEST_LOG_LEVEL:-WARNING}"
    bootstrap:
      B: 500
      alpha: 0.1
      chunk_size: 50
    study:
      presets:
        desk: {B: 100, R: 10}
    runtime:
      seed: "${MARKOV_SMOOTH_SEED:-77}"
      workers: "${MARKOV_SMOOTH_WORKERS:-1}"
    output:
      float_decimals: 4
    """
)


@pytest.fixture
def config_dir(tmp_path):
    (tmp_path / "testing.yaml").write_text(YAML, encoding="utf-8")
    return tmp_path


def test_defaults_from_placeholders(config_dir, monkeypatch):
    monkeypatch.delenv("MARKOV_SMOOTH_SEED", raising=False)
    monkeypatch.delenv("TEST_LOG_LEVEL", raising=False)
    config = load_config("testing", config_dir)
    assert config.runtime.seed == 77
    assert config.log_level == "WARNING"
    assert config.bootstrap.B == 500
    assert config.study_presets["desk"].R == 10
    assert config.output.float_decimals == 4
    assert config.steady_state.tol == 1e-10


def test_environment_overrides(config_dir, monkeypatch):
    monkeypatch.setenv("MARKOV_SMOOTH_SEED", "123")
    monkeypatch.setenv("MARKOV_SMOOTH_WORKERS", "3")
    config = load_config("testing", config_dir)
    assert config.runtime.seed == 123
    assert config.runtime.workers == 3


def test_missing_file_uses_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("MARKOV_SMOOTH_SEED", "9")
    config = load_config("nowhere", tmp_path)
    assert config.runtime.seed == 9
    assert config.study_presets["full"].B == 5000
    assert config.study_presets["desk"].R == 300


def test_missing_file_default_seed(tmp_path, monkeypatch):
    monkeypatch.delenv("MARKOV_SMOOTH_SEED", raising=False)
    assert load_config("nowhere", tmp_path).runtime.seed == DEFAULT_SEED


def test_substitution_is_recursive(monkeypatch):
    monkeypatch.setenv("A_VALUE", "x")
    data = {"a": "${A_VALUE}", "b": ["${MISSING_VALUE:-y}", 3], "c": "plain"}
    assert _substitute_env_variables(data) == {"a": "x", "b": ["y", 3], "c": "plain"}


def test_bundled_development_config():
    config = load_config("development")
    assert config.study_presets["desk"].B == 1000
    assert config.study_presets["full"].R == 1000
    assert config.estimation.row_sum_tolerance == 1e-9


def test_services_wiring(config_dir):
    config = load_config("testing", config_dir)
    services = setup_services(config, workers=2)
    assert services.pool.workers == 2
    assert services.report_repo.decimals == 4
    assert services.study_config_repo.presets["desk"] == (100, 10)

"""Файлы матриц, последовательностей и конфигураций исследования"""

import json

import numpy as np
import pytest

from src.adapter.repository.matrix_repository import MatrixRepository, write_text
from src.adapter.repository.study_config_repository import StudyConfigRepository
from src.domain.entity.chain import StateSequence
from src.domain.errors import (
    DimensionMismatchError,
    InvalidConfigError,
    MalformedFileError,
    ParameterOutOfRangeError,
    RowSumViolationError,
)

PRESETS = {"desk": (1000, 300), "full": (5000, 1000)}


@pytest.fixture
def repo():
    return MatrixRepository()


class TestMatrixFiles:
    def test_bundled_matrices(self, repo, data_dir, eq8):
        assert repo.load_matrix(data_dir / "eq8.csv") == eq8
        assert repo.load_matrix(data_dir / "pI.csv").d == 3
        assert repo.load_matrix(data_dir / "pII.csv")[0, 0] == pytest.approx(0.1)

    def test_sec7_files(self, repo, data_dir, sec7_phat, sec7_ptilde_printed):
        np.testing.assert_allclose(repo.load_matrix(data_dir / "sec7_phat.csv").entries, sec7_phat.entries, atol=1e-15)
        np.testing.assert_allclose(
            repo.load_matrix(data_dir / "sec7_ptilde.csv").entries, sec7_ptilde_printed, atol=1e-6
        )

    def test_json_matrix(self, repo, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"d": 2, "rows": [[0.5, 0.5], [0.1, 0.9]]}))
        assert repo.load_matrix(path)[1, 1] == 0.9

    def test_json_dimension_mismatch(self, repo, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"d": 3, "rows": [[0.5, 0.5], [0.1, 0.9]]}))
        with pytest.raises(DimensionMismatchError):
            repo.load_matrix(path)

    def test_row_sum_violation(self, repo, write_matrix):
        with pytest.raises(RowSumViolationError, match=r"RowSumViolation\(0, 1.1\)"):
            repo.load_matrix(write_matrix([[0.6, 0.5], [0.5, 0.5]]))

    def test_malformed(self, repo, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("0.5,abc\n0.5,0.5\n")
        with pytest.raises(MalformedFileError):
            repo.load_matrix(path)

    def test_missing(self, repo, tmp_path):
        with pytest.raises(FileNotFoundError):
            repo.load_matrix(tmp_path / "absent.csv")

    def test_dump_six_decimals(self, repo, sec7_phat):
        text = repo.dump_matrix(sec7_phat)
        assert text.splitlines()[0] == "0.111111,0.222222,0.222222,0.444444"
        assert text.splitlines()[2].startswith("0.000000,0.037037")

    def test_dump_json(self, repo, eq8):
        data = json.loads(repo.dump_matrix(eq8, "json"))
        assert data["d"] == 4
        assert data["rows"][2][3] == pytest.approx(0.75)

    def test_written_dump_reloads(self, repo, tmp_path, eq8):
        path = tmp_path / "out" / "eq8.csv"
        write_text(repo.dump_matrix(eq8), path)
        assert repo.load_matrix(path) == eq8


class TestSequenceFiles:
    def test_table1_sample(self, repo, data_dir):
        seq = repo.load_sequence(data_dir / "table1_sample1.csv", 4)
        assert seq.one_based() == [3, 4, 2, 4, 3, 4, 3, 4, 4, 1]

    def test_state_out_of_range(self, repo, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text("1,2,5\n")
        with pytest.raises(ParameterOutOfRangeError):
            repo.load_sequence(path, 4)

    def test_not_integers(self, repo, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text("1,x,2\n")
        with pytest.raises(MalformedFileError):
            repo.load_sequence(path, 4)

    def test_dump(self, repo):
        assert repo.dump_sequence(StateSequence.from_one_based([3, 3, 1], 3)) == "3,3,1\n"


class TestStudyConfigFiles:
    @pytest.fixture
    def study_repo(self, repo, data_dir):
        return StudyConfigRepository(repo, PRESETS, default_seed=5, data_dir=data_dir)

    def test_bundled_desk(self, study_repo, data_dir):
        configs = study_repo.load(data_dir / "table5_desk.json")
        assert [c.truth_name for c in configs] == ["P_I", "P_II"]
        for cfg in configs:
            assert (cfg.B, cfg.R) == (1000, 300)
            assert cfg.n_grid == (25, 50, 100)
            assert [u.label for u in cfg.u_grid] == ["0.5", "1", "2", "inf"]
            assert cfg.tracked_cells == ((1, 1), (1, 2))
            assert cfg.alpha == pytest.approx(0.05)
            assert cfg.seed.master_seed == 20240601

    def test_bundled_full(self, study_repo, data_dir):
        configs = study_repo.load(data_dir / "table5_full.json")
        assert (configs[0].B, configs[0].R) == (5000, 1000)

    def test_preset_argument_wins(self, study_repo, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"truth": "P_I", "B": 20, "R": 3}))
        assert (study_repo.load(path)[0].B, study_repo.load(path)[0].R) == (20, 3)
        cfg = study_repo.load(path, preset="desk")[0]
        assert (cfg.B, cfg.R) == (1000, 300)

    def test_seed_override_and_default(self, study_repo, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"truth": "P_I", "B": 20, "R": 3}))
        assert study_repo.load(path)[0].seed.master_seed == 5
        assert study_repo.load(path, seed=99)[0].seed.master_seed == 99

    def test_truth_by_path(self, study_repo, tmp_path, write_matrix):
        write_matrix([[0.9, 0.1], [0.2, 0.8]], name="custom.csv")
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"truth": "custom.csv", "B": 20, "R": 3, "u_grid": [0.5, "inf"]}))
        cfg = study_repo.load(path)[0]
        assert cfg.truth_name == "custom"
        assert cfg.truth.d == 2

    def test_unknown_truth(self, study_repo, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"truth": "nothing.csv"}))
        with pytest.raises(InvalidConfigError):
            study_repo.load(path)

    @pytest.mark.parametrize(
        "content",
        [
            {"truth": "P_I", "u_grid": ["zero"]},
            {"truth": "P_I", "extra": 1},
            {"truth": "P_I", "preset": "huge"},
            {"n_grid": [10]},
        ],
    )
    def test_invalid_content(self, study_repo, tmp_path, content):
        path = tmp_path / "s.json"
        path.write_text(json.dumps(content))
        with pytest.raises(InvalidConfigError):
            study_repo.load(path)

    def test_not_json(self, study_repo, tmp_path):
        path = tmp_path / "s.json"
        path.write_text("{not json")
        with pytest.raises(MalformedFileError):
            study_repo.load(path)

    def test_missing(self, study_repo, tmp_path):
        with pytest.raises(FileNotFoundError):
            study_repo.load(tmp_path / "absent.json")

"""Исследование покрытия: конфигурация, покрытие, встроенные матрицы, малые прогоны"""

import numpy as np
import pytest

from src.domain.entity.bootstrap_result import ConfidenceInterval
from src.domain.entity.chain import Distribution, SeedSpec
from src.domain.entity.coverage_report import CoverageReport, StudyConfig
from src.domain.entity.estimate import SmoothingParam
from src.domain.errors import EmptySampleError, InvalidConfigError
from src.domain.service.chain.chain_core import steady_state, validate_matrix
from src.domain.usecase.coverage_study.builtin import builtin_matrices, canonical_name
from src.domain.usecase.coverage_study.run_study import coverage, replicate, run_study

U_GRID = ("0.5", "1", "2", "inf")


class TestCoverage:
    def test_all_cover(self):
        assert coverage([ConfidenceInterval(0.0, 1.0, 0.05)] * 4, 0.4) == 1.0

    def test_none_cover(self):
        intervals = [ConfidenceInterval(0.0, 0.3, 0.05), ConfidenceInterval(0.5, 0.9, 0.05)]
        assert coverage(intervals, 0.4) == 0.0

    def test_ratio(self):
        intervals = [ConfidenceInterval(0.0, 1.0, 0.05)] * 9 + [ConfidenceInterval(0.5, 0.9, 0.05)]
        assert coverage(intervals, 0.4) == pytest.approx(0.9)

    def test_endpoints_count(self):
        assert coverage([ConfidenceInterval(0.4, 0.4, 0.05)], 0.4) == 1.0

    def test_empty(self):
        with pytest.raises(EmptySampleError):
            coverage([], 0.4)


class TestBuiltins:
    def test_names(self):
        assert set(builtin_matrices()) == {"P_I", "P_II", "Eq8"}

    def test_values(self):
        m = builtin_matrices()
        np.testing.assert_allclose(m["P_I"].entries.sum(axis=1), 1.0)
        assert m["P_II"][0, 0] == pytest.approx(2 / 20)
        assert m["Eq8"][2, 3] == pytest.approx(0.75)

    def test_doubly_stochastic_and_uniform_limit(self):
        for name in ("P_I", "P_II"):
            P = builtin_matrices()[name]
            np.testing.assert_allclose(P.entries, P.entries.T)
            np.testing.assert_allclose(P.entries.sum(axis=0), 1.0)
            np.testing.assert_allclose(steady_state(P).probs, [1 / 3] * 3, atol=1e-10)

    def test_aliases(self):
        assert canonical_name("pII") == "P_II"
        assert canonical_name("eq8") == "Eq8"
        with pytest.raises(KeyError):
            canonical_name("P_III")


class TestStudyConfig:
    def test_alpha_from_nominal(self, p_i):
        cfg = StudyConfig(truth=p_i, n_grid=(25,), u_grid=U_GRID, B=10, R=2)
        assert cfg.alpha == pytest.approx(0.05)
        assert cfg.u_grid[-1].is_infinite

    @pytest.mark.parametrize(
        "overrides",
        [
            {"n_grid": ()},
            {"u_grid": ()},
            {"R": 0},
            {"B": 1},
            {"nominal": 1.0},
            {"tracked_cells": ((4, 1),)},
            {"n_grid": (1,)},
        ],
    )
    def test_invalid(self, p_i, overrides):
        params = dict(truth=p_i, n_grid=(25,), u_grid=U_GRID, B=10, R=2)
        params.update(overrides)
        with pytest.raises(InvalidConfigError):
            StudyConfig(**params)


class TestRunStudy:
    def test_identity_truth_always_covers(self):
        cfg = StudyConfig(
            truth=validate_matrix(np.eye(3)),
            n_grid=(10,),
            u_grid=("inf",),
            B=20,
            R=5,
            seed=SeedSpec(4),
        )
        report = run_study(cfg)
        assert report.coverage(10, "inf", (1, 1)) == 1.0
        assert report.get(10, "inf", (1, 1)).mean_width == 0.0

    def test_report_shape(self, p_i):
        cfg = StudyConfig(truth=p_i, n_grid=(20, 30), u_grid=U_GRID, B=30, R=4, truth_name="P_I", seed=SeedSpec(8))
        report = run_study(cfg)
        assert len(report) == 2 * 4 * 2
        assert report.truths == ["P_I"]
        assert len(report.arms()) == 8
        for cell in report:
            assert 0.0 <= cell.coverage <= 1.0
            assert cell.replications == 4
            assert cell.mean_width >= 0.0

    def test_deterministic(self, p_ii):
        cfg = StudyConfig(truth=p_ii, n_grid=(25,), u_grid=U_GRID, B=30, R=3, seed=SeedSpec(5))
        assert run_study(cfg) == run_study(cfg)

    def test_arms_share_chain_and_resample_uniforms(self, p_ii):
        """При большом u сглаженное плечо почти совпадает с плечом u = ∞"""
        seed = SeedSpec(12).spawn(0).spawn(0)
        cells = ((1, 1), (1, 2))
        u_grid = (SmoothingParam(30), SmoothingParam.infinite())
        result = replicate(p_ii, Distribution.uniform(3), 25, u_grid, 50, 0.05, cells, seed)
        np.testing.assert_allclose(result[0], result[1], atol=1e-9)

    def test_replicate_shape(self, p_i, seed):
        u_grid = tuple(SmoothingParam.parse(u) for u in U_GRID)
        result = replicate(p_i, Distribution.uniform(3), 20, u_grid, 20, 0.05, ((1, 1), (1, 2)), seed)
        assert result.shape == (4, 2, 2)
        assert set(np.unique(result[..., 0])) <= {0.0, 1.0}

    def test_merge(self, p_i, p_ii):
        reports = [
            run_study(StudyConfig(truth=P, n_grid=(15,), u_grid=("1",), B=10, R=2, truth_name=name))
            for name, P in (("P_I", p_i), ("P_II", p_ii))
        ]
        merged = CoverageReport.merge(reports)
        assert merged.truths == ["P_I", "P_II"]
        assert merged.get(15, "1", (1, 2), truth="P_II").truth == "P_II"

"""Эмпирическая функция распределения и процентильные интервалы"""

import numpy as np
import pytest

from src.domain.entity.bootstrap_result import ConfidenceInterval, EmpiricalCDF
from src.domain.errors import AlphaOutOfRangeError, EmptySampleError, MarkovChainError
from src.domain.service.bootstrap.percentile import column_cis, empirical_cdf, percentile_ci


def brute_force_interval(values, alpha):
    """Перебор ступенчатой функции по значениям выборки"""
    values = sorted(values)
    B = len(values)
    F = {x: sum(1 for v in values if v <= x) / B for x in values}
    lower_candidates = [x for x in values if F[x] <= alpha + 1e-12]
    lower = max(lower_candidates) if lower_candidates else min(values)
    upper = min(x for x in values if F[x] >= 1 - alpha - 1e-12)
    return lower, upper


class TestEmpiricalCDF:
    def test_definition(self):
        F = empirical_cdf([1, 2, 3])
        assert F(2) == pytest.approx(2 / 3)

    def test_boundaries(self):
        F = empirical_cdf([1, 2, 3])
        assert F(0.5) == 0.0
        assert F(3) == 1.0
        assert F(10) == 1.0

    def test_multiplicity(self):
        assert empirical_cdf([1, 1, 2])(1) == pytest.approx(2 / 3)

    def test_right_continuous_steps(self):
        F = empirical_cdf([0.2, 0.1, 0.4])
        np.testing.assert_allclose(F(np.array([0.1, 0.15, 0.2, 0.4])), [1 / 3, 1 / 3, 2 / 3, 1.0])

    def test_pairs(self):
        assert EmpiricalCDF(np.array([2.0, 1.0, 1.0, 3.0])).pairs() == [(1.0, 0.5), (2.0, 0.75), (3.0, 1.0)]

    def test_empty(self):
        with pytest.raises(EmptySampleError):
            empirical_cdf([])


class TestPercentileCI:
    def test_tenths(self):
        values = [k / 10 for k in range(1, 11)]
        ci = percentile_ci(values, 0.1)
        assert (ci.lower, ci.upper) == (0.1, 0.9)

    def test_degenerate(self):
        ci = percentile_ci([0.3] * 50, 0.05)
        assert (ci.lower, ci.upper) == (0.3, 0.3)
        assert ci.is_point

    def test_four_values_quarter(self):
        # F̂(3) = 0.75 >= 0.75, так что x_U = 3
        ci = percentile_ci([1, 2, 3, 4], 0.25)
        assert (ci.lower, ci.upper) == (1.0, 3.0)
        assert (ci.lower, ci.upper) == brute_force_interval([1, 2, 3, 4], 0.25)

    def test_lower_falls_back_to_minimum(self):
        ci = percentile_ci([0.0] * 8 + [0.5, 1.0], 0.05)
        assert ci.lower == 0.0

    def test_matches_brute_force(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            B = int(rng.integers(2, 60))
            values = rng.integers(0, 12, size=B) / 11.0
            alpha = float(rng.choice([0.05, 0.1, 0.25, 0.4]))
            ci = percentile_ci(values, alpha)
            assert (ci.lower, ci.upper) == brute_force_interval(values.tolist(), alpha)

    def test_endpoints_are_sample_values(self):
        values = np.random.default_rng(3).random(1000)
        ci = percentile_ci(values, 0.05)
        assert ci.lower in values and ci.upper in values
        # 50 значений <= x_L, x_U равно 950-й порядковой статистике
        ordered = np.sort(values)
        assert ci.lower == ordered[49]
        assert ci.upper == ordered[949]

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 0.7, -0.1])
    def test_alpha_out_of_range(self, alpha):
        with pytest.raises(AlphaOutOfRangeError):
            percentile_ci([1, 2, 3], alpha)

    def test_empty(self):
        with pytest.raises(EmptySampleError):
            percentile_ci([], 0.1)

    def test_column_cis(self):
        estimates = np.column_stack([np.linspace(0, 1, 11), np.zeros(11)])
        first, second = column_cis(estimates, [0, 1], 0.1)
        assert (second.lower, second.upper) == (0.0, 0.0)
        assert first.lower <= first.upper


class TestConfidenceInterval:
    def test_closed_containment(self):
        ci = ConfidenceInterval(0.2, 0.4, 0.05)
        assert ci.contains(0.2) and ci.contains(0.4) and not ci.contains(0.41)
        assert ci.width == pytest.approx(0.2)

    def test_inverted_bounds(self):
        with pytest.raises(MarkovChainError):
            ConfidenceInterval(0.5, 0.4, 0.05)

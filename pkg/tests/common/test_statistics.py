"""tests/common/test_statistics.py"""

import math

import numpy as np
import pytest

from pam_localisation.common.exceptions.domain_exceptions import ValidationError
from pam_localisation.common.utils.statistics import (
    chi_square,
    chi_square_poisson,
    chi_square_pooled,
    chi_square_uniform,
    is_non_decreasing,
    is_strictly_monotone,
    ks_one_sample,
    ks_two_sample,
    mann_kendall,
    median_confidence_interval,
)


class TestGoodnessOfFit:
    """KS y chi-cuadrado."""

    def test_ks_two_sample_identical(self):
        sample = np.linspace(0.0, 1.0, 200)
        outcome = ks_two_sample(sample, sample)
        assert outcome.statistic == 0.0
        assert outcome.pvalue == pytest.approx(1.0)

    def test_ks_two_sample_requires_data(self):
        with pytest.raises(ValidationError):
            ks_two_sample([], [1.0])

    def test_ks_one_sample_detects_shift(self, rng):
        sample = rng.random(500) + 0.5
        assert ks_one_sample(sample, lambda x: np.clip(x, 0.0, 1.0)).pvalue < 1e-6

    def test_chi_square_of_exact_counts(self):
        outcome = chi_square([10, 20, 30], [10, 20, 30])
        assert outcome.statistic == 0.0
        assert outcome.pvalue == pytest.approx(1.0)
        assert outcome.dof == 2

    def test_chi_square_rescales_expected(self):
        assert chi_square([10, 20], [1, 2]).statistic == pytest.approx(0.0)

    def test_uniformity(self, rng):
        assert chi_square_uniform(rng.random(20_000), bins=50).pvalue > 1e-3

    def test_poisson_counts(self, rng):
        assert chi_square_poisson(rng.poisson(3.0, 2000), 3.0).pvalue > 1e-3
        assert chi_square_poisson(rng.poisson(6.0, 2000), 3.0).pvalue < 1e-6

    def test_pooled_merges_small_cells(self):
        outcome = chi_square_pooled([50, 50, 3, 3], [50, 50, 3, 3])
        assert outcome.statistic == pytest.approx(0.0)
        assert outcome.dof == 2

    def test_pooled_shape_mismatch(self):
        with pytest.raises(ValidationError):
            chi_square_pooled([1, 2], [1, 2, 3])


class TestTrendAndOrder:
    """Mann-Kendall, mediana y monotonía."""

    def test_increasing_series(self):
        outcome = mann_kendall(np.arange(10.0))
        assert outcome.direction == "increasing"
        assert outcome.s == 45
        assert outcome.pvalue < 0.05

    def test_decreasing_with_covariate(self):
        t = np.repeat([1.0, 2.0, 3.0], 20)
        y = -t + np.tile(np.linspace(0.0, 0.1, 20), 3)
        assert mann_kendall(y, t).direction == "decreasing"

    def test_constant_series_has_no_trend(self):
        outcome = mann_kendall(np.ones(8))
        assert outcome.direction == "none"
        assert outcome.pvalue == 1.0

    def test_requires_three_observations(self):
        with pytest.raises(ValidationError):
            mann_kendall([1.0, 2.0])

    def test_median_interval_contains_median(self):
        low, high = median_confidence_interval(np.arange(1.0, 101.0), 0.95)
        assert low <= 50.5 <= high
        assert low > 1.0 and high < 100.0

    def test_median_interval_of_empty_sample(self):
        low, high = median_confidence_interval([], 0.95)
        assert math.isnan(low) and math.isnan(high)

    def test_monotonicity_helpers(self):
        assert is_non_decreasing([1.0, 1.0, 2.0])
        assert is_non_decreasing([1.0, 0.99, 2.0], tol=0.02)
        assert not is_non_decreasing([1.0, 0.5])
        assert is_strictly_monotone([3.0, 2.0, 1.0], increasing=False)
        assert not is_strictly_monotone([1.0, 1.0, 2.0], increasing=True)

"""tests/domain/test_limits.py"""

import math

import numpy as np
import pytest

from pam_localisation.common.exceptions.domain_exceptions import InvalidBoxError
from pam_localisation.common.utils.statistics import ks_one_sample
from pam_localisation.domain.entities.regime_profile import RegimeProfile
from pam_localisation.domain.limits.limit_objects import (
    cell_probabilities,
    critical_reference,
    density_normalisation,
    gap_quantiles,
    limit_density,
    rho,
    sample_limit_B,
    x_quantiles,
)
from pam_localisation.domain.limits.point_process import (
    Box,
    box_counts,
    box_measure,
    box_measure_hat,
    box_measure_quad,
    default_boxes,
    rescaled_points,
)
from pam_localisation.domain.model.potential import build_potential


class TestLimitObjects:
    """Densidad de (X1, Y1) y muestreo exacto de B."""

    def test_rho(self):
        assert rho(3.0) == 0.5
        assert rho(2.0) == 1.0

    def test_density_is_normalised(self):
        value, _ = density_normalisation(3.0)
        assert value == pytest.approx(1.0, abs=1e-6)

    def test_density_vanishes_outside_support(self):
        assert limit_density(1.0, 0.4, 3.0) == 0.0
        assert limit_density(-1.0, 2.0, 3.0) == 0.0
        assert limit_density(1.0, 2.0, 3.0) > 0.0

    def test_samples_are_reproducible_and_in_support(self):
        a = sample_limit_B(3.0, 500, seed=4)
        b = sample_limit_B(3.0, 500, seed=4)
        np.testing.assert_array_equal(a.x1, b.x1)
        assert len(a) == 500
        assert np.all(a.y1 > rho(3.0) * a.x1)
        assert np.all(a.b > 0)

    @pytest.mark.slow
    def test_gap_follows_frechet_law(self):
        samples = sample_limit_B(3.0, 5000, seed=9)
        gaps = samples.y1 - rho(3.0) * samples.x1
        outcome = ks_one_sample(gaps, lambda w: np.exp(-np.power(np.maximum(w, 1e-300), -2.0)))
        assert outcome.pvalue > 1e-3

    def test_cells_partition_probability(self):
        x_edges = x_quantiles(3.0, 4)
        w_edges = gap_quantiles(3.0, 4)
        probs = cell_probabilities(3.0, x_edges, w_edges)
        assert probs.shape == (4, 4)
        assert probs.sum() == pytest.approx(1.0, abs=1e-6)
        np.testing.assert_allclose(probs.sum(axis=0), 0.25, atol=1e-6)

    def test_critical_reference_is_centred(self):
        sample = critical_reference(3.0, 1.0, 4000, seed=2)
        assert abs(float(np.median(sample))) < 0.1 * float(np.median(np.abs(sample)))


class TestPointProcess:
    """Medidas de intensidad y conteos en cajas."""

    def test_unit_box_measures(self):
        box = Box(0.0, 1.0, 2.0, math.inf)
        assert box_measure(box, 3.0) == pytest.approx(2.0 ** -3)
        assert box_measure_hat(box, 3.0, 1.0) == pytest.approx(2.0 ** -3)

    def test_hat_measure_alpha_two(self):
        box = Box(0.0, 2.0, 3.0, 4.0)
        assert box_measure_hat(box, 2.0, 0.5) == pytest.approx(0.5 * 2.0 * (3.0 ** -2 - 4.0 ** -2))

    @pytest.mark.parametrize("hat", [False, True])
    def test_closed_form_matches_quadrature(self, hat):
        box = Box(0.5, 2.0, 1.5, 4.0)
        closed = box_measure_hat(box, 3.0, 1.3) if hat else box_measure(box, 3.0)
        assert box_measure_quad(box, 3.0, beta=1.3, hat=hat) == pytest.approx(closed, rel=1e-8)

    def test_box_touching_boundary_is_rejected(self):
        with pytest.raises(InvalidBoxError):
            box_measure(Box(0.0, 1.0, 0.4), 3.0)
        with pytest.raises(InvalidBoxError):
            Box.from_sequence([0.0, 1.0, 2.0])

    def test_default_boxes_are_valid(self):
        assert all(box_measure(b, 3.0) > 0 for b in default_boxes(3.0))

    def test_box_counts(self):
        x = np.array([0.5, 1.0, 1.5, 0.2])
        y = np.array([3.0, 2.0, 2.5, 1.0])
        assert box_counts(x, y, [Box(0.0, 1.0, 2.0), Box(1.0, 2.0, 2.0, 3.0)]) == [2, 1]

    def test_rescaled_points_follow_duplication(self):
        field = build_potential(RegimeProfile.constant_q(3.0, 0.0), 100, 5)
        x, y = rescaled_points(field, 100.0)
        assert x.size == 100
        assert x.max() == pytest.approx(1.0)
        np.testing.assert_allclose(y, field.xi_positive[1:] / 100.0 ** (1.0 / 3.0))
        x_e, _ = rescaled_points(field, 100.0, critical=True)
        assert x_e.size == 0

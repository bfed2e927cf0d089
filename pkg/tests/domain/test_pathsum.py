"""tests/domain/test_pathsum.py"""

import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import gammaln

from pam_localisation.common.exceptions.domain_exceptions import (
    EnumerationCapError,
    OutOfWindowError,
    ValidationError,
)
from pam_localisation.domain.entities.geometric_path import GeometricPath
from pam_localisation.domain.pathsum.paths import (
    count_paths,
    enumerate_paths,
    path_contribution,
    tail_log_bound,
    truncated_path_sum,
)
from pam_localisation.domain.pathsum.simplex import distinct_node_integral, simplex_integral
from pam_localisation.domain.solver.dense_oracle import dense_oracle


class TestSimplexIntegral:
    """log I_n(t; c) por Taylor centrado y escalado y cuadrado."""

    def test_single_node(self):
        assert simplex_integral(2.5, [1.7]) == pytest.approx(2.5 * 1.7, rel=1e-15)

    def test_two_nodes_closed_form(self):
        assert math.exp(simplex_integral(1.0, [1.0, 0.0])) == pytest.approx(math.e - 1.0, rel=1e-13)

    @pytest.mark.parametrize("n", [1, 3, 8])
    def test_confluent_nodes(self, n):
        t, c = 0.7, 2.3
        expected = t * c + n * math.log(t) - float(gammaln(n + 1))
        assert simplex_integral(t, [c] * (n + 1)) == pytest.approx(expected, abs=1e-12)

    def test_matches_partial_fractions(self):
        nodes = [0.0, 1.0, 3.0]
        assert math.exp(simplex_integral(1.0, nodes)) == pytest.approx(distinct_node_integral(1.0, nodes),
                                                                       rel=1e-10)

    def test_matches_quadrature_with_wide_spread(self):
        t, c = 2.0, [9.0, 1.0]
        value, _ = integrate.quad(lambda s: math.exp(c[0] * s + c[1] * (t - s)), 0.0, t, epsabs=0.0, epsrel=1e-13)
        assert math.exp(simplex_integral(t, c)) == pytest.approx(value, rel=1e-10)

    @pytest.mark.parametrize("t,c", [(2.0, [3.0, 0.0]), (5.0, [0.0, 4.0]), (10.0, [1.0, 7.5])])
    def test_two_nodes_far_apart(self, t, c):
        expected = (math.exp(t * c[0]) - math.exp(t * c[1])) / (c[0] - c[1])
        assert math.exp(simplex_integral(t, c)) == pytest.approx(expected, rel=1e-10)

    def test_wide_spread_matches_partial_fractions(self):
        nodes = [0.0, 4.0, 9.0, 2.5]
        assert math.exp(simplex_integral(2.0, nodes)) == pytest.approx(distinct_node_integral(2.0, nodes),
                                                                       rel=1e-9)

    def test_node_order_does_not_matter(self):
        assert simplex_integral(1.3, [4.0, 1.0, 2.5]) == pytest.approx(simplex_integral(1.3, [1.0, 2.5, 4.0]),
                                                                      abs=1e-10)

    def test_rejects_invalid_arguments(self):
        with pytest.raises(ValidationError):
            simplex_integral(0.0, [1.0])
        with pytest.raises(ValidationError):
            distinct_node_integral(1.0, [2.0, 2.0])


class TestPathEnumeration:
    """Caminos 0 -> z confinados a la ventana."""

    def test_counts(self):
        assert count_paths(0, 2, 5) == 3
        assert count_paths(1, 3, 5) == 4
        assert count_paths(0, 2, 0) == 1

    @pytest.mark.parametrize("target,max_len,window", [(0, 6, 3), (2, 6, 2), (-1, 5, 4)])
    def test_enumeration_matches_count(self, target, max_len, window):
        paths = list(enumerate_paths(target, max_len, window))
        assert len(paths) == count_paths(target, max_len, window)
        assert len(set(p.sites for p in paths)) == len(paths)
        assert all(p.end == target and max(abs(z) for z in p.sites) <= window for p in paths)

    def test_lengths_are_non_decreasing(self):
        lengths = [p.length for p in enumerate_paths(0, 6, 3)]
        assert lengths == sorted(lengths)

    def test_geometric_path_from_steps(self):
        path = GeometricPath.from_steps("+-+")
        assert path.sites == (0, 1, 0, 1)
        assert path.steps == "+-+"
        with pytest.raises(ValidationError):
            GeometricPath((0, 2))

    def test_target_outside_window(self):
        with pytest.raises(OutOfWindowError):
            list(enumerate_paths(4, 6, 3))


class TestTruncatedPathSum:
    """Cota inferior de log u por suma de caminos frente al oráculo."""

    def test_empty_path_only(self, ramp_field):
        result = truncated_path_sum(ramp_field, 0.8, 0, 0)
        assert result.n_paths == 1
        assert result.log_u_lower == pytest.approx(0.8 * (7.0 - 2.0), rel=1e-14)

    def test_path_contribution(self, ramp_field):
        contribution = path_contribution(ramp_field, 1.0, GeometricPath((0, 1)))
        expected = -2.0 + math.log((math.exp(7.0) - math.exp(3.0)) / 4.0)
        assert contribution.log_value == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("t", [0.25, 1.0])
    @pytest.mark.parametrize("target", [0, 2])
    def test_lower_bound_within_tail(self, ramp_field, t, target):
        result = truncated_path_sum(ramp_field, t, target, 10)
        exact = dense_oracle(ramp_field, t, 2)
        u_exact = math.exp(exact.log_mass + exact.log_v_at(target))
        u_lower = math.exp(result.log_u_lower)
        assert u_lower <= u_exact * (1.0 + 1e-9)
        assert u_exact - u_lower <= result.tail_bound + 1e-9 * u_exact

    def test_threads_do_not_change_result(self, peaked_field):
        serial = truncated_path_sum(peaked_field, 0.5, 1, 7)
        threaded = truncated_path_sum(peaked_field, 0.5, 1, 7, threads=3)
        assert serial.log_u_lower == threaded.log_u_lower

    def test_tail_bound_formula(self):
        assert tail_log_bound(1.0, 3.0, 0) == pytest.approx(3.0 + math.log1p(-math.exp(-2.0)))

    def test_validation(self, ramp_field):
        with pytest.raises(ValidationError):
            truncated_path_sum(ramp_field, 1.0, 2, 1)
        with pytest.raises(ValidationError):
            truncated_path_sum(ramp_field, 0.0, 0, 2)
        with pytest.raises(EnumerationCapError):
            truncated_path_sum(ramp_field, 1.0, 0, 4, cap=2)
        with pytest.raises(OutOfWindowError):
            truncated_path_sum(ramp_field, 1.0, 0, 4, window=3)

    def test_longer_truncation_tightens_bound(self, ramp_field):
        short = truncated_path_sum(ramp_field, 1.0, 0, 4)
        long = truncated_path_sum(ramp_field, 1.0, 0, 12)
        assert long.log_u_lower >= short.log_u_lower
        assert long.log_tail_bound < short.log_tail_bound
        assert np.isfinite(long.tail_bound)

"""tests/domain/test_localisation.py"""

import logging
import math
from dataclasses import replace

import numpy as np
import pytest

from pam_localisation.common.exceptions.domain_exceptions import (
    DegenerateMaximiserError,
    DomainError,
    InsufficientWindowError,
    ValidationError,
)
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.entities.regime_profile import RegimeKind, RegimeProfile
from pam_localisation.domain.localisation.diagnostics import taylor_proxy, zeta_statistic
from pam_localisation.domain.localisation.events import check_events
from pam_localisation.domain.localisation.ksets import build_K, theta
from pam_localisation.domain.localisation.maximisers import find_maximisers
from pam_localisation.domain.localisation.moments import (
    analytic_q_moments,
    conditional_law_check,
    conditional_variance,
    m_bar,
    moment_stats,
    q_values,
    s_bar_inv,
)
from pam_localisation.domain.localisation.scales import make_scales, psi, psi_profile
from pam_localisation.domain.model.pareto import pareto_quantile


T = 100.0


@pytest.fixture
def scales():
    return make_scales(T, 3.0)


@pytest.fixture
def sites(peaked_field, scales):
    return find_maximisers(peaked_field, T, scales, radius=2)


@pytest.fixture
def kset(peaked_field, sites):
    return build_K(peaked_field, sites, 1.0)


class TestScales:
    """Escalas r_t, a_t, f_t, g_t y funcional Psi_t."""

    def test_a_t_at_one_million(self):
        scales = make_scales(1e6, 3.0)
        assert scales.a_t == pytest.approx(269.1, rel=1e-3)
        assert scales.r_t / scales.a_t ** 3 == pytest.approx(1.0, rel=1e-12)

    def test_f_and_g_bracket_one(self):
        scales = make_scales(1e4, 3.0)
        assert scales.f_t < 1.0 < scales.g_t
        assert scales.f_t * scales.g_t == pytest.approx(1.0)

    def test_lambda_depends_on_alpha(self):
        assert make_scales(1e3, 3.0).lambda_t == 1.0
        assert make_scales(1e3, 2.0).lambda_t == pytest.approx(math.log(1e3))

    @pytest.mark.parametrize("t", [math.exp(2.0), 7.0, 1.0])
    def test_rejects_small_times(self, t):
        with pytest.raises(DomainError):
            make_scales(t, 3.0)

    def test_search_radius_and_gap_radius(self, scales):
        assert scales.search_radius == math.ceil(4.0 * scales.g_t * scales.r_t)
        assert scales.with_radius(10).R_t == pytest.approx(10.0 * (1.0 + scales.f_t))

    def test_psi_known_values(self):
        assert psi(50.0, 0, 3.7) == 3.7
        assert psi(50.0, 12, 1.0) == 1.0
        assert psi(1.0, 1, math.e) == pytest.approx(math.e - 1.0, rel=1e-15)

    def test_psi_profile_spans_radius(self, peaked_field):
        profile = psi_profile(peaked_field, T, 3)
        assert profile.shape == (7,)
        assert profile[3 + 2] == pytest.approx(psi(T, 2, 10.0))


class TestMaximisers:
    """Búsqueda exacta de Z1, Z2, Ze y Z1*."""

    def test_peak_is_the_first_maximiser(self, sites):
        assert sites.z1 == 2
        assert sites.z1_star == 2
        assert sites.psi_z1 == pytest.approx(psi(T, 2, 10.0))

    def test_ties_break_towards_smaller_sites(self, sites):
        assert sites.z2 == 0

    def test_non_duplicated_maximiser_prefers_positive_side(self, sites):
        assert sites.ze == 1
        assert sites.psi_ze == pytest.approx(psi(T, 1, 5.0))

    def test_stability_flag(self, peaked_field, scales, sites):
        assert sites.stable is True
        unchecked = find_maximisers(peaked_field, T, scales, radius=3)
        assert unchecked.stable is None

    def test_unstable_second_maximiser_is_reported(self, scales, caplog):
        half = [1.0, 20.0, 3.0, 1.0, 15.0]
        field = PotentialField.from_values(half[:0:-1] + half, alpha=3.0)
        with caplog.at_level(logging.WARNING, logger="pam_localisation"):
            sites = find_maximisers(field, T, scales, radius=2)
        assert (sites.z1, sites.z2, sites.stable) == (1, 2, False)
        assert "z2=2 -> 4" in caplog.text
        assert "z1=" not in caplog.text

    def test_window_must_cover_radius(self, peaked_field, scales):
        with pytest.raises(InsufficientWindowError):
            find_maximisers(peaked_field, T, scales, radius=5)

    def test_symmetric_field_has_no_non_duplicated_maximiser(self, ramp_field, scales):
        result = find_maximisers(ramp_field, T, scales, radius=1)
        assert result.z1 == 0
        assert result.ze is None


class TestKSets:
    """Umbral theta_t y conjuntos K±."""

    def test_theta_is_one_below_supercritical(self, scales, critical_profile):
        assert theta(scales, critical_profile, RegimeKind.CRITICAL) == 1.0
        assert theta(scales, critical_profile, RegimeKind.SUBCRITICAL) == 1.0

    def test_supercritical_theta_at_least_one(self):
        profile = RegimeProfile.builtin(RegimeKind.SUPERCRITICAL, 3.0)
        assert theta(make_scales(1e4, 3.0), profile, RegimeKind.SUPERCRITICAL) >= 1.0

    def test_k_sets(self, kset):
        np.testing.assert_array_equal(kset.k_plus, [1])
        np.testing.assert_array_equal(kset.k_minus, [-1])
        assert kset.size == 2

    def test_threshold_filters_sites(self, peaked_field, sites):
        high = build_K(peaked_field, sites, 2.0)
        assert high.size_plus == 1
        assert high.size_minus == 0

    def test_degenerate_maximiser(self, peaked_field, sites):
        with pytest.raises(DegenerateMaximiserError):
            build_K(peaked_field, replace(sites, z1=0), 1.0)


class TestMoments:
    """Momentos condicionales M, Sigma, Q y sus aproximaciones."""

    def test_moment_arithmetic(self):
        assert m_bar(100, 10.0, 1.5) == pytest.approx(11.5, rel=1e-15)
        assert s_bar_inv(100, 10.0, 1.5) == pytest.approx(0.85, rel=1e-15)
        assert s_bar_inv(0, 10.0, 1.5) == math.inf

    def test_q_values(self):
        np.testing.assert_allclose(q_values(np.array([5.0]), 10.0), [math.log(2.0)], rtol=1e-15)
        np.testing.assert_array_equal(q_values(np.array([10.0, 12.0]), 10.0), [0.0, 0.0])

    def test_moment_stats(self, peaked_field, sites, kset, scales):
        stats = moment_stats(peaked_field, sites, kset, scales)
        assert stats.m_plus == pytest.approx(0.2)
        assert stats.sig_plus == pytest.approx(0.2)
        assert stats.m_minus == pytest.approx(1.0 / 8.5)
        assert stats.q_plus == pytest.approx(math.log(2.0))
        assert stats.q_minus == pytest.approx(-math.log(0.85))
        assert stats.q_t == pytest.approx(math.log(2.0) + math.log(0.85))
        assert stats.n_z1 == 1
        assert stats.m_bar == pytest.approx(0.115)
        assert stats.s_bar_inv == pytest.approx(8.5)
        assert stats.excluded == 0

    @pytest.mark.parametrize("alpha", [2.0, 3.0])
    def test_analytic_moments_match_asymptotics(self, alpha):
        first = analytic_q_moments(1e-3, 1.0, alpha, 1)
        assert first.relative_gap < 1e-2
        assert first.asymptotic == pytest.approx(alpha / (alpha - 1.0) * 1e-3)

    def test_conditional_variance_alpha_three(self):
        variance = conditional_variance(1e-3, 1.0, 3.0)
        assert variance.asymptotic == pytest.approx(0.75e-6)
        assert variance.exact == pytest.approx(variance.asymptotic, rel=5e-2)

    def test_analytic_moments_domain(self):
        with pytest.raises(ValidationError):
            analytic_q_moments(1e-3, 1.0, 3.0, 3)
        with pytest.raises(DomainError):
            analytic_q_moments(0.6, 1.0, 3.0, 1)

    def test_conditional_law_of_k_values(self, rng):
        values = 2.0 * pareto_quantile(rng.random(2000), 3.0)
        outcome = conditional_law_check(values, 2.0, 3.0)
        assert outcome.pvalue > 1e-3


class TestEventsAndDiagnostics:
    """Eventos E1, E2, Ecr y diagnósticos zeta y Taylor."""

    def test_critical_events(self, peaked_field, sites, kset, scales, critical_profile):
        gap_scales = scales.with_radius(sites.z1)
        stats = moment_stats(peaked_field, sites, kset, gap_scales)
        flags = check_events(peaked_field, sites, kset, stats, gap_scales, critical_profile, RegimeKind.CRITICAL)
        assert flags.ecr_applicable
        assert set(flags.ecr_clauses) == {"m_bar_small", "m_plus", "m_minus", "s_bar", "sig_plus", "sig_minus"}
        assert flags.e1_clauses["potential_gap"] is True
        assert flags.e1_clauses["e_below_d2"] is False
        assert not flags.gap_scan_truncated
        assert flags.e2 is False
        record = flags.as_dict()
        assert record["e1"] == flags.e1

    def test_ecr_is_vacuous_outside_critical(self, peaked_field, sites, kset, scales, critical_profile):
        stats = moment_stats(peaked_field, sites, kset, scales)
        flags = check_events(peaked_field, sites, kset, stats, scales, critical_profile, RegimeKind.SUBCRITICAL)
        assert not flags.ecr_applicable
        assert flags.ecr is True
        assert flags.ecr_clauses == {}

    def test_zeta_statistic(self, peaked_field, sites, scales):
        zeta = zeta_statistic(peaked_field, sites, scales)
        assert zeta.raw == 5.0
        assert zeta.value == pytest.approx(5.0 / scales.a_t ** (2.0 / 3.0))
        assert not zeta.empty

    def test_zeta_sentinel_without_non_duplicated_sites(self, ramp_field, scales):
        sites = find_maximisers(ramp_field, T, scales, radius=1)
        zeta = zeta_statistic(ramp_field, sites, scales)
        assert zeta.empty
        assert zeta.value == 0.0

    def test_taylor_proxy(self, peaked_field, kset):
        assert taylor_proxy(peaked_field, kset, 10.0) == pytest.approx(0.35)

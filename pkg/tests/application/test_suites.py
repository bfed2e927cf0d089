"""tests/application/test_suites.py"""

import pytest

from pam_localisation.application.services.suites.base_suite import MIN_REPLICATES, check_regime
from pam_localisation.application.services.suites.clt_suite import clt_suite, default_theta_over_xi
from pam_localisation.application.services.suites.events_suite import CountingSuite, EventsSuite
from pam_localisation.application.services.suites.heuristics_suite import HeuristicsSuite, heuristic_diagnostics
from pam_localisation.application.services.suites.localisation_suite import LocalisationSuite, localisation_suite
from pam_localisation.application.services.suites.phase_suite import phase_suite
from pam_localisation.application.services.suites.zeta_suite import ZetaSuite
from pam_localisation.common.exceptions.domain_exceptions import (
    RegimeMismatchError,
    UnderpoweredError,
    ValidationError,
    WrongSuiteError,
)
from pam_localisation.domain.entities.regime_profile import ProfileFamily, RegimeKind
from pam_localisation.interfaces.models.config_models import ExperimentConfig, ProfileConfig
from pam_localisation.interfaces.models.result_models import Outcome


GRID = [100.0, 1000.0]


@pytest.fixture
def suite_config():
    return ExperimentConfig(alpha=3.0, t_grid=GRID, replicates=MIN_REPLICATES, threads=1)


class TestPreconditions:
    """Validación previa a la ejecución del lote."""

    def test_underpowered(self, suite_config):
        config = suite_config.model_copy(update={"replicates": 5})
        with pytest.raises(UnderpoweredError, match="replicates=5"):
            EventsSuite().validate(config)

    def test_times_below_e_squared(self, suite_config):
        config = suite_config.model_copy(update={"t_grid": [5.0, 100.0]})
        with pytest.raises(ValidationError):
            EventsSuite().validate(config)

    def test_too_few_times(self, suite_config):
        config = suite_config.model_copy(update={"t_grid": [100.0]})
        with pytest.raises(ValidationError):
            EventsSuite().validate(config)

    def test_wrong_regime(self, suite_config):
        config = suite_config.model_copy(update={"profile": ProfileConfig(kind=RegimeKind.SUBCRITICAL)})
        with pytest.raises(WrongSuiteError, match="zeta"):
            ZetaSuite().validate(config)

    def test_regime_mismatch(self, suite_config):
        profile = ProfileConfig(kind=RegimeKind.SUBCRITICAL, exponent=0.0)
        with pytest.raises(RegimeMismatchError):
            check_regime(suite_config.model_copy(update={"profile": profile}))

    def test_custom_profile_is_classified(self, suite_config):
        profile = ProfileConfig(kind=RegimeKind.CUSTOM, family=ProfileFamily.CONSTANT, constant=1.0)
        assert check_regime(suite_config.model_copy(update={"profile": profile})) == RegimeKind.SUPERCRITICAL

    def test_too_few_successful_replicates(self, suite_config, make_replicate):
        results = [make_replicate(i, {t: {} for t in GRID}) for i in range(MIN_REPLICATES - 1)]
        results.append(make_replicate(MIN_REPLICATES, {}, status="failed"))
        with pytest.raises(UnderpoweredError):
            EventsSuite().run(suite_config, results)


class TestReplicateSuites:
    """Veredictos sobre réplicas sintéticas."""

    def test_events_non_decreasing(self, suite_config, make_replicate):
        results = [
            make_replicate(i, {
                100.0: {"events": {"e1": True, "e2": i % 2 == 0, "ecr": False}},
                1000.0: {"events": {"e1": True, "e2": True, "ecr": True}, "z1_star": 7 if i < 3 else 5},
            })
            for i in range(MIN_REPLICATES)
        ]
        verdict = EventsSuite().run(suite_config, results)
        assert verdict.outcome == Outcome.PASS
        assert verdict.per_t[0]["e1_e2"] == pytest.approx(0.5)
        assert verdict.per_t[1]["e1_e2"] == 1.0
        assert verdict.per_t[1]["z1_is_z1_star"] == pytest.approx(0.9)

    def test_events_decreasing_fails(self, suite_config, make_replicate):
        results = [
            make_replicate(i, {
                100.0: {},
                1000.0: {"events": {"e1": i % 2 == 0, "e2": True, "ecr": True}},
            })
            for i in range(MIN_REPLICATES)
        ]
        assert EventsSuite().run(suite_config, results).outcome == Outcome.FAIL

    def test_counting_concentrates(self, suite_config, make_replicate):
        results = [
            make_replicate(i, {
                100.0: {"n_z1": 3 if i % 2 else 6, "eta_z1": 3.0},
                1000.0: {"n_z1": 30, "eta_z1": 29.0},
            })
            for i in range(MIN_REPLICATES)
        ]
        verdict = CountingSuite().run(suite_config, results)
        assert verdict.passed
        assert verdict.per_t[0]["fraction_in_band"] == pytest.approx(0.5)
        assert verdict.per_t[1]["fraction_in_band"] == 1.0

    def test_counting_skips_null_eta(self, suite_config, make_replicate):
        results = [make_replicate(i, {100.0: {"eta_z1": 0.0, "n_z1": 0}, 1000.0: {}}) for i in range(MIN_REPLICATES)]
        verdict = CountingSuite().run(suite_config, results)
        assert verdict.per_t[0]["n"] == 0
        assert verdict.notes

    def test_zeta_stable(self, suite_config, make_replicate):
        results = [
            make_replicate(i, {t: {"zeta": 1.0 + i / 10.0} for t in GRID})
            for i in range(MIN_REPLICATES)
        ]
        verdict = ZetaSuite().run(suite_config, results)
        assert verdict.passed
        assert verdict.statistics["iqr_ratios"] == [pytest.approx(1.0)]

    def test_zeta_out_of_bounds(self, suite_config, make_replicate):
        results = [
            make_replicate(i, {100.0: {"zeta": 1.0 + i}, 1000.0: {"zeta": 1e4 * (1.0 + i)}})
            for i in range(MIN_REPLICATES)
        ]
        assert not ZetaSuite().run(suite_config, results).passed

    def test_localisation(self, make_replicate):
        grid = [100.0, 1000.0, 10000.0]
        config = ExperimentConfig(alpha=3.0, t_grid=grid, replicates=MIN_REPLICATES)
        masses = {100.0: 0.5, 1000.0: 0.8, 10000.0: 0.97}
        results = [make_replicate(i, {t: {"two_site_mass": m} for t, m in masses.items()})
                   for i in range(MIN_REPLICATES)]
        verdict = LocalisationSuite().run(config, results)
        assert verdict.passed
        assert verdict.statistics["final_median"] == pytest.approx(0.97)

    def test_localisation_below_threshold(self, make_replicate):
        grid = [100.0, 1000.0, 10000.0]
        config = ExperimentConfig(alpha=3.0, t_grid=grid, replicates=MIN_REPLICATES)
        results = [make_replicate(i, {t: {"two_site_mass": 0.6} for t in grid}) for i in range(MIN_REPLICATES)]
        verdict = LocalisationSuite().run(config, results)
        assert verdict.outcome == Outcome.FAIL
        assert verdict.statistics["non_decreasing"]

    def test_localisation_shortcut(self, make_replicate):
        grid = [100.0, 1000.0, 10000.0]
        config = ExperimentConfig(alpha=3.0, t_grid=grid, replicates=MIN_REPLICATES)
        results = [make_replicate(i, {t: {} for t in grid}) for i in range(MIN_REPLICATES)]
        assert localisation_suite(config, results).passed

    def test_phase_subcritical_decay(self, make_replicate):
        grid = [100.0, 1000.0, 10000.0]
        profile = ProfileConfig(kind=RegimeKind.SUBCRITICAL)
        config = ExperimentConfig(alpha=3.0, profile=profile, t_grid=grid, replicates=MIN_REPLICATES)
        levels = {100.0: 1.0, 1000.0: 0.5, 10000.0: 0.1}
        results = [make_replicate(i, {t: {"log_ratio": (-1) ** i * (c + 0.01 * i)} for t, c in levels.items()})
                   for i in range(MIN_REPLICATES)]
        verdict = phase_suite(config, results)
        assert verdict.passed
        assert verdict.statistics["direction"] == "decreasing"

    def test_phase_rejects_critical_profile(self, suite_config):
        with pytest.raises(WrongSuiteError):
            phase_suite(suite_config.model_copy(update={"t_grid": [100.0, 1000.0, 10000.0]}))

    def test_heuristics_always_pass(self, suite_config, make_replicate):
        results = [make_replicate(i, {100.0: {"log_ratio": 0.5}, 1000.0: {"log_ratio": 0.2}})
                   for i in range(MIN_REPLICATES)]
        verdict = HeuristicsSuite().run(suite_config, results)
        assert verdict.passed
        assert verdict.per_t[0]["median_gap_q"] == pytest.approx(0.4)
        assert verdict.statistics["median_gap_decreasing"]

    def test_heuristic_rows(self, make_replicate):
        rows = heuristic_diagnostics(make_replicate(0, {100.0: {"log_ratio": 0.3, "zeta_raw": 2.0}}))
        assert rows[0]["gap_q"] == pytest.approx(0.2)
        assert rows[0]["gap_taylor"] == pytest.approx(0.0)
        assert rows[0]["second_order_bound"] == pytest.approx(2.0 / 10.0 * 0.3)


class TestCltSuite:
    """TCL condicional simulado."""

    def test_parameter_checks(self):
        with pytest.raises(UnderpoweredError):
            clt_suite(3.0, 1e-3, 100, seed=0)
        with pytest.raises(ValidationError):
            clt_suite(3.0, 0.1, 10_000, seed=0)

    def test_working_ratio(self):
        assert default_theta_over_xi(2.0) == 1e-2
        assert default_theta_over_xi(3.0) == 1e-3
        assert default_theta_over_xi(2.5) == 1e-3

    def test_difference_of_halves_is_centred(self):
        verdict = clt_suite(3.0, 1e-3, 1001, seed=2, n_sums=200)
        assert verdict.statistics["k_size"] == 1001
        assert verdict.statistics["variance"] > 0
        assert abs(verdict.statistics["v_mean"]) < 0.5

    @pytest.mark.slow
    @pytest.mark.parametrize("alpha", [2.0, 3.0])
    def test_normal_limit(self, alpha):
        verdict = clt_suite(alpha, default_theta_over_xi(alpha), 10_000, seed=1)
        assert verdict.passed
        assert verdict.statistics["variance"] > 0

"""tests/application/test_services.py"""

import math

import pytest

from pam_localisation.application.services import verify_service
from pam_localisation.application.services.batch_runner import BatchRunner
from pam_localisation.application.services.config_service import ConfigService
from pam_localisation.application.services.localisation_service import LocalisationService
from pam_localisation.application.services.replicate_service import replicate_seed, run_replicate
from pam_localisation.application.services.solver_service import SolverService
from pam_localisation.application.services.summary_service import SUMMARY_METRICS, plot_tables, summarise
from pam_localisation.application.services.verify_service import VerifyService, verdict_table
from pam_localisation.common.exceptions.domain_exceptions import ConfigurationError, StiffnessError
from pam_localisation.common.utils.json_utils import to_json
from pam_localisation.domain.entities.regime_profile import RegimeKind
from pam_localisation.domain.localisation.scales import make_scales
from pam_localisation.domain.model.pareto import pareto_quantile
from pam_localisation.infrastructure.adapters.file_config_adapter import FileConfigAdapter
from pam_localisation.interfaces.models.config_models import WindowPolicy
from pam_localisation.interfaces.models.result_models import Outcome, PointFailure


class DictConfigAdapter:
    """Adaptador en memoria que cuenta las lecturas."""

    def __init__(self, document):
        self.document = document
        self.calls = 0

    def get_config(self, force_refresh: bool = False):
        self.calls += 1
        return self.document


class TestReplicateSeed:
    """Derivación de semillas por réplica."""

    def test_deterministic_and_distinct(self):
        assert replicate_seed(11, 0) == replicate_seed(11, 0)
        assert len({replicate_seed(11, i) for i in range(50)}) == 50
        assert replicate_seed(11, 0) != replicate_seed(12, 0)

    def test_fits_in_64_bits(self):
        assert 0 <= replicate_seed(2 ** 40, 7) < 2 ** 64


class TestRunReplicate:
    """Una réplica completa sobre la malla."""

    def test_successful_replicate(self, small_config):
        seed = replicate_seed(small_config.base_seed, 0)
        result = run_replicate(small_config, seed, 0)
        assert result.ok
        assert [p.t for p in result.points] == [20.0, 50.0]
        for p in result.points:
            assert 0.0 <= p.two_site_mass <= 1.0 + 1e-9
            assert p.top_site_mass <= p.two_site_mass + 1e-12
            assert p.z1 >= 0
            assert p.q_t == pytest.approx(p.q_plus - p.q_minus)
            assert set(p.events) >= {"e1", "e2"}

    def test_single_time(self, small_config):
        result = run_replicate(small_config, 5, 0, t=50.0)
        assert [p.t for p in result.points] == [50.0]

    def test_errors_become_failed_records(self, small_config):
        config = small_config.model_copy(update={"window": WindowPolicy(radius=30, L=10)})
        result = run_replicate(config, 5, 3)
        assert not result.ok
        assert result.index == 3
        assert result.error_type == "InsufficientWindowError"
        assert result.points == []

    def test_failed_time_keeps_other_points(self, small_config, monkeypatch):
        original = SolverService.solve

        def solve(self, field, t_grid, L_solve=None):
            if t_grid[-1] == 50.0:
                raise StiffnessError("El paso del integrador colapsó", {"t": 50.0})
            return original(self, field, t_grid, L_solve)

        monkeypatch.setattr(SolverService, "solve", solve)
        result = run_replicate(small_config, 5, 0)
        assert result.ok
        assert [p.t for p in result.points] == [20.0]
        assert [(f.t, f.error_type) for f in result.failures] == [(50.0, "StiffnessError")]

    def test_solve_window_follows_maximiser(self, small_config, monkeypatch):
        windows = []
        original = SolverService.solve

        def solve(self, field, t_grid, L_solve=None):
            windows.append(L_solve)
            return original(self, field, t_grid, L_solve)

        monkeypatch.setattr(SolverService, "solve", solve)
        result = run_replicate(small_config, 5, 0)
        assert len(windows) == len(result.points) == 2
        for window, p in zip(windows, result.points):
            reach = abs(p.z1) * (1.0 + make_scales(p.t, 3.0).f_t)
            assert window == min(30, math.ceil(reach) + 1)
            assert abs(p.z1) <= window

    def test_reproducible(self, small_config):
        a = run_replicate(small_config, 99, 0)
        b = run_replicate(small_config, 99, 0)
        assert to_json(a.to_record()) == to_json(b.to_record())


class TestBatchRunner:
    """Lotes ordenados e independientes del número de procesos."""

    def test_seeds(self, small_config):
        pairs = BatchRunner(small_config).seeds()
        assert pairs == [(i, replicate_seed(11, i)) for i in range(3)]

    def test_results_sorted_by_index(self, small_config):
        results = BatchRunner(small_config).run()
        assert [r.index for r in results] == [0, 1, 2]
        assert [r.seed for r in results] == [replicate_seed(11, i) for i in range(3)]

    @pytest.mark.slow
    def test_parallel_matches_serial(self, small_config):
        serial = [to_json(r.to_record()) for r in BatchRunner(small_config, threads=1).run()]
        parallel = [to_json(r.to_record()) for r in BatchRunner(small_config, threads=2).run()]
        assert serial == parallel


class TestLocalisationService:
    """Cadena maximizadores, K, momentos y eventos."""

    def test_snapshot_and_report(self, peaked_field, critical_profile):
        service = LocalisationService(critical_profile)
        snapshot = service.localise(peaked_field, 100.0, radius=2)
        assert snapshot.sites.z1 == 2
        assert snapshot.regime == RegimeKind.CRITICAL
        report = service.report(peaked_field, snapshot)
        assert report.t == 100.0
        assert report.regime == "critical"
        assert report.q_t == pytest.approx(snapshot.stats.q_t)



class TestConfigService:
    """Precedencia archivo < suites.<nombre> < CLI."""

    DOCUMENT = {
        "alpha": 2.5,
        "replicates": 40,
        "t_grid": [100.0, 1000.0],
        "suites": {"point_process": {"replicates": 80, "point_process": {"n_fields": 20}}},
    }

    def test_file_values(self):
        config = ConfigService(DictConfigAdapter(self.DOCUMENT)).get_experiment_config()
        assert config.alpha == 2.5
        assert config.replicates == 40
        assert config.point_process.n_fields == 500

    def test_suite_section_overrides_file(self):
        config = ConfigService(DictConfigAdapter(self.DOCUMENT)).get_experiment_config(suite="point_process")
        assert config.replicates == 80
        assert config.point_process.n_fields == 20
        assert config.alpha == 2.5

    def test_cli_overrides_win_and_none_is_ignored(self):
        service = ConfigService(DictConfigAdapter(self.DOCUMENT))
        config = service.get_experiment_config({"replicates": 7, "alpha": None, "window": {"radius": 12}},
                                               suite="point_process")
        assert config.replicates == 7
        assert config.alpha == 2.5
        assert config.window.radius == 12

    def test_document_is_cached(self):
        adapter = DictConfigAdapter(self.DOCUMENT)
        service = ConfigService(adapter)
        service.get_experiment_config()
        service.get_experiment_config(suite="clt")
        assert adapter.calls == 1
        service.get_config(force_refresh=True)
        assert adapter.calls == 2

    def test_invalid_values(self):
        service = ConfigService(DictConfigAdapter({"alpha": 1.5}))
        with pytest.raises(ConfigurationError) as exc:
            service.get_experiment_config()
        assert "alpha" in str(exc.value.details["errors"])

    def test_invalid_grid(self):
        with pytest.raises(ConfigurationError):
            ConfigService(DictConfigAdapter({"t_grid": [100.0, 10.0]})).get_experiment_config()

    def test_from_file(self, config_file):
        service = ConfigService(FileConfigAdapter(config_file({"base_seed": 5})))
        assert service.get_experiment_config().base_seed == 5


class TestSummary:
    """Agregados por t para summary.csv."""

    def test_rows(self, make_replicate):
        results = [make_replicate(i, {100.0: {"log_ratio": -0.5 * i}, 1000.0: {"stable": None}})
                   for i in range(5)]
        results.append(make_replicate(5, {}, status="failed"))
        rows = summarise(results, [100.0, 1000.0])
        assert [row["t"] for row in rows] == [100.0, 1000.0]
        assert rows[0]["replicates"] == {"ok": 5, "failed": 1, "failed_at_t": 0}
        assert rows[0]["abs_log_ratio"]["median"] == pytest.approx(1.0)
        assert rows[0]["two_site_mass"]["n"] == 5
        assert rows[0]["events"]["e1"] == 1.0
        assert math.isnan(rows[1]["events"]["stable"])

    def test_failures_counted_per_time(self, make_replicate):
        partial = make_replicate(0, {100.0: {}})
        partial.failures.append(PointFailure(t=1000.0, error="paso colapsado", error_type="StiffnessError"))
        rows = summarise([partial, make_replicate(1, {100.0: {}, 1000.0: {}})], [100.0, 1000.0])
        assert rows[0]["replicates"]["failed_at_t"] == 0
        assert rows[1]["replicates"] == {"ok": 2, "failed": 0, "failed_at_t": 1}
        assert rows[1]["two_site_mass"]["n"] == 1

    def test_plot_tables(self, make_replicate):
        summary = summarise([make_replicate(0, {100.0: {}})], [100.0])
        tables = plot_tables(summary)
        assert set(tables) == set(SUMMARY_METRICS)
        assert tables["q_t"][0]["t"] == 100.0
        assert tables["q_t"][0]["median"] == pytest.approx(0.1)


class TestVerifyService:
    """Comprobaciones de la batería de autoverificación."""

    @pytest.mark.parametrize("seed", [0, 3, 11])
    def test_pareto_moments(self, seed):
        verdict = VerifyService(seed=seed).check_pareto()
        assert verdict.passed
        assert verdict.statistics["sigma"] == pytest.approx(math.sqrt(0.75))
        assert verdict.statistics["log_mean"] == pytest.approx(1.0 / 3.0, abs=0.002)

    def test_pareto_detects_wrong_tail(self, monkeypatch):
        monkeypatch.setattr(verify_service, "pareto_quantile", lambda u, alpha: pareto_quantile(u, 2.8))
        verdict = VerifyService(seed=3).check_pareto()
        assert not verdict.passed
        assert verdict.statistics["ks"] > 0.005

    @pytest.mark.slow
    def test_simplex(self):
        assert VerifyService(seed=3).check_simplex().passed

    def test_errors_mark_check_as_failed(self, monkeypatch):
        service = VerifyService()

        def broken():
            raise ValueError("sin datos")

        monkeypatch.setattr(service, "checks", lambda: {"pareto": service.check_pareto, "broken": broken})
        verdicts = service.run()
        assert [v.suite for v in verdicts] == ["pareto", "broken"]
        assert verdicts[1].outcome == Outcome.FAIL
        table = verdict_table(verdicts)
        assert table[1] == {"check": "broken", "outcome": "FAIL", "notes": "ValueError: sin datos"}

    def test_reduced_sizes_by_default(self):
        assert VerifyService().sizes["oracle_fields"] < VerifyService(full=True).sizes["oracle_fields"]

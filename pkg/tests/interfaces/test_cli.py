"""tests/interfaces/test_cli.py"""

import json

import pytest

from pam_localisation.interfaces.cli.main import EXIT_FAIL, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main, parse_cli
from pam_localisation.interfaces.models.config_models import ExperimentConfig, ProfileConfig, WindowPolicy


@pytest.fixture(autouse=True)
def no_config_env(monkeypatch):
    monkeypatch.delenv("PAM_CONFIG", raising=False)


class TestParseCli:
    """Traducción de argumentos a la configuración anidada."""

    def test_overrides(self):
        cli = parse_cli(["solve", "--alpha", "2.5", "--t-grid", "1,10,100", "--window", "7", "--method", "radau"])
        assert cli.subcommand == "solve"
        assert cli.overrides["alpha"] == 2.5
        assert cli.overrides["t_grid"] == [1.0, 10.0, 100.0]
        assert cli.overrides["window"] == {"radius": 7}
        assert cli.overrides["solver"]["method"] == "radau"
        assert cli.overrides["emit_plotdata"] is None

    def test_experiment_suite(self):
        cli = parse_cli(["experiment", "point_process", "--emit-plotdata"])
        assert cli.suite == "point_process"
        assert cli.overrides["emit_plotdata"] is True

    def test_pathsum_arguments(self):
        cli = parse_cli(["pathsum", "--max-len", "6", "--target", "-1"])
        assert cli.max_len == 6
        assert cli.target == -1


class TestExitCodes:
    """Códigos de salida de la CLI."""

    def test_unknown_subcommand(self):
        assert main(["bogus"]) == EXIT_USAGE

    def test_unknown_suite(self):
        assert main(["experiment", "nope"]) == EXIT_USAGE

    def test_underpowered_experiment(self, tmp_path):
        code = main(["experiment", "events", "--replicates", "5", "--t-grid", "100,1000",
                     "--out", str(tmp_path / "out")])
        assert code == EXIT_USAGE
        assert not (tmp_path / "out" / "replicates.jsonl").exists()

    def test_invalid_configuration(self, tmp_path, config_file):
        assert main(["generate", "--config", config_file({"alpha": 1.0}), "--out", str(tmp_path)]) == EXIT_USAGE

    def test_missing_field_file(self, tmp_path):
        code = main(["solve", "--field", str(tmp_path / "missing.jsonl"), "--out", str(tmp_path)])
        assert code == EXIT_RUNTIME

    def test_suite_failure(self, tmp_path, monkeypatch, make_replicate):
        from pam_localisation.application.services import batch_runner

        results = [make_replicate(i, {100.0: {}, 1000.0: {"events": {"e1": False, "e2": False, "ecr": False}}})
                   for i in range(30)]
        monkeypatch.setattr(batch_runner.BatchRunner, "run", lambda self, replicates=None: results)
        code = main(["experiment", "events", "--replicates", "30", "--t-grid", "100,1000",
                     "--out", str(tmp_path)])
        assert code == EXIT_FAIL
        verdicts = json.loads((tmp_path / "verdicts.json").read_text(encoding="utf-8"))
        assert verdicts["events"]["outcome"] == "FAIL"
        assert (tmp_path / "summary.csv").exists()


class TestSubcommands:
    """Ejecuciones pequeñas de extremo a extremo."""

    def test_generate_is_deterministic(self, tmp_path):
        args = ["generate", "--seed", "42", "--window", "20"]
        assert main(args + ["--out", str(tmp_path / "a")]) == EXIT_OK
        assert main(args + ["--out", str(tmp_path / "b")]) == EXIT_OK
        a = (tmp_path / "a" / "field.jsonl").read_bytes()
        b = (tmp_path / "b" / "field.jsonl").read_bytes()
        assert a == b
        config = json.loads((tmp_path / "a" / "effective_config.json").read_text(encoding="utf-8"))
        assert config["config"]["base_seed"] == 42
        assert config["invocation"]["subcommand"] == "generate"

    def test_solve_from_generated_field(self, tmp_path, capsys):
        assert main(["generate", "--seed", "3", "--window", "6", "--out", str(tmp_path)]) == EXIT_OK
        capsys.readouterr()
        field = str(tmp_path / "field.jsonl")
        code = main(["solve", "--field", field, "--t-grid", "0.5,2", "--top-k", "2", "--out", str(tmp_path)])
        assert code == EXIT_OK
        lines = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert [line["t"] for line in lines] == [0.5, 2.0]
        rows = (tmp_path / "states.csv").read_text(encoding="utf-8").splitlines()
        assert rows[0] == "t,z,v,log_v,log_mass"
        assert len(rows) == 1 + 2 * 2

    def test_localise(self, tmp_path):
        code = main(["localise", "--seed", "5", "--t-grid", "20", "--window", "30", "--out", str(tmp_path)])
        assert code == EXIT_OK
        records = (tmp_path / "localisation.jsonl").read_text(encoding="utf-8").splitlines()
        assert json.loads(records[0])["t"] == 20.0

    def test_pathsum(self, tmp_path, capsys):
        code = main(["pathsum", "--seed", "1", "--window", "2", "--t-grid", "0.5", "--max-len", "6",
                     "--threads", "1", "--out", str(tmp_path)])
        assert code == EXIT_OK
        record = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert record["within_bound"] is True
        assert (tmp_path / "paths.csv").exists()


class TestConfigModels:
    """Validación de la configuración de experimentos."""

    @pytest.mark.parametrize("grid", [[], [10.0, 5.0], [0.0, 1.0]])
    def test_invalid_grids(self, grid):
        with pytest.raises(ValueError):
            ExperimentConfig(t_grid=grid)

    def test_custom_profile_requires_family(self):
        with pytest.raises(ValueError):
            ProfileConfig(kind="custom")

    def test_window_policy_defaults(self, small_config):
        assert small_config.window.field_window(30) == 60
        assert small_config.window.solve_window(30) == 30

    def test_solve_window_from_reach(self):
        policy = WindowPolicy()
        assert policy.solve_window(30, 10.2) == 12
        assert policy.solve_window(30, 0.0) == 1
        assert policy.solve_window(30, 100.0) == 30
        assert WindowPolicy(solve_scale=2.0).solve_window(100, 10.2) == 22
        assert WindowPolicy(L_solve=5).solve_window(30, 10.2) == 5

    @pytest.mark.slow
    def test_verify_passes_at_default_seed(self, tmp_path):
        assert main(["verify", "--out", str(tmp_path)]) == EXIT_OK

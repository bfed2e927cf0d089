"""tests/common/test_utils.py"""

import math

import numpy as np
import pytest

from pam_localisation import __version__
from pam_localisation.application.services.suites.base_suite import Suite
from pam_localisation.application.services.suites.events_suite import EventsSuite
from pam_localisation.common.exceptions.domain_exceptions import ConfigurationError, StrategyNotFoundError
from pam_localisation.common.factories.propagator_factory import PropagatorFactory
from pam_localisation.common.factories.suite_factory import SuiteFactory
from pam_localisation.common.utils.jmespath import (
    failed_seeds,
    first_or_none,
    point_rows,
    point_values,
    search,
    suite_section,
)
from pam_localisation.common.utils.json_utils import (
    deep_merge,
    drop_none,
    flatten_json_obj,
    from_json,
    restore_float,
    sanitize,
    to_json,
)
from pam_localisation.common.utils.version import git_describe, version_string


@pytest.fixture
def records():
    return [
        {"index": 0, "seed": 10, "status": "ok",
         "points": [{"t": 100.0, "q_t": 0.5, "events": {"e1": True}},
                    {"t": 1000.0, "q_t": "inf", "events": {"e1": False}}]},
        {"index": 1, "seed": 11, "status": "failed", "points": []},
        {"index": 2, "seed": 12, "status": "ok",
         "points": [{"t": 100.0, "q_t": -0.25, "events": {"e1": False}}]},
    ]


class TestJsonUtils:
    """Serialización con centinelas y utilidades de diccionarios."""

    def test_non_finite_floats_become_sentinels(self):
        text = to_json({"a": math.inf, "b": -math.inf, "c": math.nan, "d": np.float64(1.5)})
        assert from_json(text) == {"a": "inf", "b": "-inf", "c": "nan", "d": 1.5}

    def test_restore_float(self):
        assert restore_float("inf") == math.inf
        assert math.isnan(restore_float("nan"))
        assert restore_float("abc") == "abc"

    def test_sanitize_numpy(self):
        assert sanitize({"x": np.arange(3), "flag": np.bool_(True), 1: np.int64(4)}) == {
            "x": [0, 1, 2], "flag": True, "1": 4,
        }

    def test_indented_output_is_sorted(self):
        assert to_json({"b": 1, "a": 2}, indent=2).index('"a"') < to_json({"b": 1, "a": 2}, indent=2).index('"b"')

    def test_invalid_json(self):
        with pytest.raises(ValueError):
            from_json("{not json")

    def test_flatten(self):
        assert flatten_json_obj({"t": 1.0, "replicates": {"ok": 3, "failed": 0}}) == {
            "t": 1.0, "replicates.ok": 3, "replicates.failed": 0,
        }

    def test_deep_merge_and_drop_none(self):
        base = {"alpha": 3.0, "window": {"radius": 10, "L": 40}}
        overrides = drop_none({"alpha": None, "window": {"radius": 20, "L": None}})
        assert overrides == {"window": {"radius": 20}}
        assert deep_merge(base, overrides) == {"alpha": 3.0, "window": {"radius": 20, "L": 40}}
        assert base["window"]["radius"] == 10


class TestJmespath:
    """Consultas sobre registros de réplicas."""

    def test_point_values_skip_failed_replicates(self, records):
        assert point_values(records, 100.0, "q_t") == [0.5, -0.25]
        assert point_values(records, 1000.0, "q_t") == [math.inf]

    def test_point_rows_with_nested_fields(self, records):
        assert point_rows(records, 100.0, ["q_t", "events.e1"]) == [[0.5, True], [-0.25, False]]

    def test_failed_seeds(self, records):
        assert failed_seeds(records) == [11]

    def test_suite_section(self):
        config = {"alpha": 3.0, "suites": {"point_process": {"replicates": 50}}}
        assert suite_section(config, "point_process") == {"replicates": 50}
        assert suite_section(config, "clt") == {}

    def test_search_helpers(self, records):
        assert search("[0].seed", records) == 10
        assert search("[9].seed", records, default=-1) == -1
        assert first_or_none("[?status=='failed'].index", records) == 1
        assert first_or_none("[?status=='missing'].index", records) is None


class TestSuiteFactory:
    """Registro perezoso de suites."""

    def test_builtin_suites(self):
        suites = SuiteFactory.get_registered_suites()
        assert {"localisation", "phase", "critical", "clt", "variance", "point_process",
                "events", "counting", "zeta", "heuristics"} <= set(suites)

    def test_create_suite(self):
        assert isinstance(SuiteFactory.create_suite("EVENTS"), EventsSuite)

    def test_unknown_suite(self):
        with pytest.raises(StrategyNotFoundError):
            SuiteFactory.create_suite("nope")

    def test_register_custom_suite(self):
        class DummySuite(Suite):
            name = "dummy"

            def evaluate(self, config, regime, results):
                return None

        SuiteFactory.register("Dummy", DummySuite)
        assert SuiteFactory.is_suite_registered("dummy")
        assert isinstance(SuiteFactory.create_suite("dummy"), DummySuite)

    def test_failing_constructor(self):
        class BrokenSuite(Suite):
            def __init__(self):
                raise RuntimeError("roto")

            def evaluate(self, config, regime, results):
                return None

        SuiteFactory.register("broken", BrokenSuite)
        with pytest.raises(ConfigurationError):
            SuiteFactory.create_suite("broken")

    def test_reset(self):
        SuiteFactory.register("dummy", EventsSuite)
        SuiteFactory.reset_suites()
        assert not SuiteFactory.is_suite_registered("dummy")
        assert SuiteFactory.is_suite_registered("events")


class TestPropagatorFactory:
    """Integradores registrados."""

    def test_defaults(self):
        assert set(PropagatorFactory.get_registered_propagators()) >= {"bdf", "radau", "krylov"}
        assert PropagatorFactory.create_propagator().name == "bdf"
        assert PropagatorFactory.create_propagator(None).name == PropagatorFactory.DEFAULT

    def test_unknown(self):
        with pytest.raises(StrategyNotFoundError):
            PropagatorFactory.create_propagator("rk4")


class TestVersion:
    """Versión registrada en effective_config.json."""

    def test_outside_repository(self, tmp_path):
        assert git_describe(str(tmp_path)) is None

    def test_version_string_prefix(self):
        assert version_string().startswith(__version__)

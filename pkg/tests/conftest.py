"""tests/conftest.py"""

import json

import numpy as np
import pytest

from pam_localisation.common.factories.suite_factory import SuiteFactory
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.entities.regime_profile import RegimeKind, RegimeProfile
from pam_localisation.interfaces.models.config_models import ExperimentConfig, WindowPolicy
from pam_localisation.interfaces.models.result_models import ReplicateResult, TimePointRecord


@pytest.fixture
def critical_profile() -> RegimeProfile:
    """Perfil crítico incorporado con alpha = 3 y beta = 1."""
    return RegimeProfile.builtin(RegimeKind.CRITICAL, 3.0, 1.0)


@pytest.fixture
def peaked_field() -> PotentialField:
    """
    Campo sintético con L = 4: pico duplicado xi(±2) = 10 y un único sitio
    no duplicado en |z| = 1 con xi(1) = 5, xi(-1) = 1.5.
    """
    xi = [1.0, 1.0, 10.0, 1.5, 1.0, 5.0, 10.0, 1.0, 1.0]
    dup = [True, False, True, True, True]
    return PotentialField.from_values(xi, dup=dup, alpha=3.0)


@pytest.fixture
def ramp_field() -> PotentialField:
    """Campo simétrico pequeño xi = (1, 3, 7, 3, 1) en [-2, 2]."""
    return PotentialField.from_values([1.0, 3.0, 7.0, 3.0, 1.0], alpha=3.0)


@pytest.fixture
def small_config(tmp_path) -> ExperimentConfig:
    """Configuración de pocas réplicas y ventana fija para pruebas rápidas."""
    return ExperimentConfig(
        alpha=3.0,
        t_grid=[20.0, 50.0],
        replicates=3,
        base_seed=11,
        window=WindowPolicy(radius=30),
        threads=1,
        out=str(tmp_path / "out"),
    )


@pytest.fixture
def config_file(tmp_path):
    """Escribe un documento de configuración y devuelve su ruta."""
    def _write(document) -> str:
        path = tmp_path / "config.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture(autouse=True)
def reset_suite_factory():
    """Deja la fábrica de suites en su estado por defecto entre pruebas."""
    yield
    SuiteFactory.reset_suites()


@pytest.fixture
def make_replicate():
    """
    Construye réplicas sintéticas: `points` mapea cada t a los campos del
    punto temporal que difieren de los valores base.
    """
    def _make(index: int, points: dict, status: str = "ok") -> ReplicateResult:
        if status != "ok":
            return ReplicateResult(index=index, seed=1000 + index, status=status, error="sintético",
                                   error_type="DomainError")
        records = []
        for t, overrides in points.items():
            base = dict(
                t=float(t), log_ratio=0.0, two_site_mass=0.95, top_site_mass=0.5, log_mass=1.0,
                leak_rate=0.0, z1=5, z1_star=5, stable=True, xi_z1=10.0, n_z1=3, eta_z1=3.0, theta_t=1.0,
                k_plus=2, k_minus=2, m_plus=0.1, m_minus=0.1, sig_plus=0.01, sig_minus=0.01,
                m_bar=0.1, s_bar_inv=1.0, q_plus=0.2, q_minus=0.1, q_t=0.1, taylor_proxy=0.1,
                zeta=1.0, zeta_raw=1.0, zeta_empty=False,
                events={"e1": True, "e2": True, "ecr": True},
            )
            base.update(overrides)
            records.append(TimePointRecord(**base))
        return ReplicateResult(index=index, seed=1000 + index, points=records)
    return _make

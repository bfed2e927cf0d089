"""application/services/suites/base_suite.py"""

import math
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from pam_localisation.application.services.batch_runner import BatchRunner
from pam_localisation.common.exceptions.domain_exceptions import (
    RegimeMismatchError,
    UnderpoweredError,
    ValidationError,
    WrongSuiteError,
)
from pam_localisation.common.utils.jmespath import point_failures, point_rows, point_values
from pam_localisation.common.utils.log import logger
from pam_localisation.common.utils.statistics import TrendOutcome, mann_kendall, median_confidence_interval
from pam_localisation.domain.entities.regime_profile import RegimeKind
from pam_localisation.domain.model.counting import classify_regime
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import Outcome, ReplicateResult, Verdict


# Mínimo de réplicas válidas para cualquier veredicto estadístico
MIN_REPLICATES = 30

# Las escalas de localización requieren t > e^2
MIN_TIME = math.exp(2.0)


def check_regime(config: ExperimentConfig) -> RegimeKind:
    """
    Régimen efectivo del experimento tras contrastar el declarado con classify_regime.

    Raises:
        RegimeMismatchError: Si el régimen declarado no coincide con la clasificación
    """
    profile = config.build_profile()
    classified = classify_regime(profile).kind
    declared = config.regime
    if declared == RegimeKind.CUSTOM:
        return classified
    if classified != declared:
        logger.error(f"Régimen declarado {declared.value} pero el perfil se clasifica como {classified.value}")
        raise RegimeMismatchError(declared.value, classified.value)
    return declared


class PointTable:
    """Vista de consulta JMESPath sobre los puntos temporales de un lote."""

    def __init__(self, results: Sequence[ReplicateResult]):
        self.records = [r.to_record() for r in results]
        self.ok_count = sum(1 for r in results if r.ok)
        self.failed_count = len(self.records) - self.ok_count

    def values(self, t: float, field: str) -> np.ndarray:
        """Valores de `field` en el tiempo t de las réplicas exitosas (nulos omitidos)."""
        return np.asarray(point_values(self.records, t, field), dtype=float)

    def failures(self, t: float) -> int:
        """Réplicas con error registrado en el tiempo t."""
        return len(point_failures(self.records, t))

    def rows(self, t: float, fields: List[str]) -> np.ndarray:
        """Columnas alineadas de los puntos en t (nulos como nan)."""
        data = [[np.nan if v is None else v for v in row] for row in point_rows(self.records, t, fields)]
        return np.asarray(data, dtype=float).reshape(-1, len(fields))

    def pooled(self, grid: Sequence[float], field: str) -> Tuple[np.ndarray, np.ndarray]:
        """Pares (t, valor) agrupados de toda la malla."""
        ts, ys = [], []
        for t in grid:
            v = self.values(t, field)
            ts.append(np.full(v.size, float(t)))
            ys.append(v)
        return np.concatenate(ts), np.concatenate(ys)


def median_row(t: float, values: np.ndarray, level: float) -> Dict[str, Any]:
    """Mediana por t con su intervalo de confianza por estadísticos de orden."""
    finite = values[~np.isnan(values)]
    low, high = median_confidence_interval(finite, level)
    return {
        "t": float(t),
        "n": int(finite.size),
        "median": float(np.median(finite)) if finite.size else float("nan"),
        "ci_low": low,
        "ci_high": high,
    }


def trend_test(ts: np.ndarray, ys: np.ndarray) -> TrendOutcome:
    """Mann-Kendall sobre pares agrupados; los infinitos se acotan al mayor flotante."""
    keep = ~np.isnan(ys)
    finite_max = np.finfo(float).max
    return mann_kendall(np.nan_to_num(ys[keep], posinf=finite_max, neginf=-finite_max), ts[keep])


def make_verdict(suite: str, passed: bool, statistics: Optional[Dict[str, Any]] = None,
                 per_t: Optional[List[Dict[str, Any]]] = None, notes: Optional[List[str]] = None) -> Verdict:
    outcome = Outcome.PASS if passed else Outcome.FAIL
    logger.info(f"Suite {suite}: {outcome.value}")
    return Verdict(suite=suite, outcome=outcome, statistics=statistics or {}, per_t=per_t or [],
                   notes=notes or [])


class Suite(ABC):
    """
    Interfaz base de las suites de verificación.

    Las suites sobre réplicas ejecutan el lote si no se les pasan resultados
    y son de solo lectura sobre ellos.
    """

    name = "base"
    needs_replicates = True
    min_replicates = MIN_REPLICATES
    allowed_regimes: Optional[Tuple[RegimeKind, ...]] = None

    def check_preconditions(self, config: ExperimentConfig, regime: RegimeKind) -> None:
        """Comprueba precondiciones propias de la suite (por defecto ninguna)."""
        return None

    @abstractmethod
    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        """
        Calcula el veredicto sobre los resultados.

        Args:
            config: Configuración del experimento
            regime: Régimen efectivo
            results: Réplicas ordenadas por índice

        Returns:
            Veredicto de la suite
        """
        pass

    def validate(self, config: ExperimentConfig, check_replicates: bool = True) -> RegimeKind:
        """
        Comprueba régimen, malla y precondiciones antes de ejecutar el lote.

        Returns:
            Régimen efectivo

        Raises:
            RegimeMismatchError: Si el perfil no corresponde al régimen declarado
            WrongSuiteError: Si la suite no aplica al régimen
            UnderpoweredError: Si config.replicates es menor que el mínimo
            ValidationError: Si la malla temporal no es válida
        """
        regime = check_regime(config)
        if self.allowed_regimes is not None and regime not in self.allowed_regimes:
            logger.error(f"La suite {self.name} no aplica al régimen {regime.value}")
            raise WrongSuiteError(self.name, regime.value)
        grid = list(config.t_grid)
        if any(b <= a for a, b in zip(grid, grid[1:])):
            logger.error(f"t_grid no creciente: {grid}")
            raise ValidationError("t_grid debe ser estrictamente creciente", {"t_grid": grid})
        if self.needs_replicates and grid[0] <= MIN_TIME:
            logger.error(f"t_grid contiene tiempos <= e^2: {grid}")
            raise ValidationError("Los tiempos de las suites deben superar e^2", {"t_grid": grid})
        self.check_preconditions(config, regime)
        if self.needs_replicates and check_replicates and config.replicates < self.min_replicates:
            logger.error(f"Suite {self.name}: {config.replicates} réplicas < {self.min_replicates}")
            raise UnderpoweredError("replicates", config.replicates, self.min_replicates)
        return regime

    def run(self, config: ExperimentConfig,
            results: Optional[Sequence[ReplicateResult]] = None) -> Verdict:
        """
        Ejecuta la suite; sin `results` ejecuta antes el lote de réplicas.

        Raises:
            RegimeMismatchError: Si el perfil no corresponde al régimen declarado
            WrongSuiteError: Si la suite no aplica al régimen
            UnderpoweredError: Si hay menos réplicas válidas que el mínimo
            ValidationError: Si la malla temporal no es válida
        """
        regime = self.validate(config, check_replicates=results is None)

        if self.needs_replicates:
            if results is None:
                results = BatchRunner(config).run()
            ok = sum(1 for r in results if r.ok)
            if ok < self.min_replicates:
                logger.error(f"Suite {self.name}: {ok} réplicas válidas < {self.min_replicates}")
                raise UnderpoweredError("replicates", ok, self.min_replicates)
        return self.evaluate(config, regime, results or [])


class ReplicateSuite(Suite):
    """Suite sobre réplicas con mínimo de tiempos en la malla."""

    min_times = 1

    def check_preconditions(self, config: ExperimentConfig, regime: RegimeKind) -> None:
        if len(config.t_grid) < self.min_times:
            raise ValidationError(f"La suite {self.name} requiere al menos {self.min_times} tiempos",
                                  {"t_grid": list(config.t_grid)})

"""application/services/suites/critical_suite.py"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from pam_localisation.application.services.suites.base_suite import PointTable, ReplicateSuite, make_verdict
from pam_localisation.common.utils.log import logger
from pam_localisation.common.utils.statistics import is_non_decreasing, ks_two_sample
from pam_localisation.domain.entities.regime_profile import ProfileFamily, RegimeKind
from pam_localisation.domain.limits.limit_objects import critical_reference
from pam_localisation.domain.model.counting import classify_regime
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult, Verdict


CRITICAL_MIN_REPLICATES = 200


def critical_beta(config: ExperimentConfig) -> float:
    """beta del perfil crítico; para perfiles personalizados, el estimado por classify_regime."""
    profile = config.build_profile()
    if profile.family == ProfileFamily.CRITICAL:
        return float(profile.beta)
    beta_hat = classify_regime(profile).beta_hat
    logger.info(f"beta estimado del perfil: {beta_hat}")
    return float(beta_hat)


def ks_trend(table: PointTable, grid: Sequence[float], field: str,
             reference: np.ndarray) -> Tuple[List[Dict[str, Any]], List[float]]:
    """Distancia KS de dos muestras entre los valores finitos de `field` y la referencia, por t."""
    rows, distances = [], []
    for t in grid:
        values = table.values(t, field)
        finite = values[np.isfinite(values)]
        outcome = ks_two_sample(finite, reference)
        rows.append({"t": float(t), "n": int(finite.size), "ks": outcome.statistic, "pvalue": outcome.pvalue,
                     "excluded": int(values.size - finite.size)})
        distances.append(outcome.statistic)
    return rows, distances


def ks_verdict(name: str, rows: List[Dict[str, Any]], distances: List[float], threshold: float,
               extra: Dict[str, Any]) -> Verdict:
    non_increasing = is_non_decreasing([-d for d in distances])
    below = distances[-1] <= threshold
    statistics = {"non_increasing": non_increasing, "final_ks": distances[-1], "threshold": threshold}
    statistics.update(extra)
    return make_verdict(name, non_increasing and below, statistics=statistics, per_t=rows,
                        notes=["La convergencia a tiempo finito es lenta; la tendencia es el contrato"])


class CriticalSuite(ReplicateSuite):
    """
    Límite crítico: log_ratio frente a la referencia sqrt(2 beta) sigma B N.

    La distancia KS de dos muestras debe ser no creciente en t y no superar
    el umbral en el mayor t.
    """

    name = "critical"
    min_replicates = CRITICAL_MIN_REPLICATES
    allowed_regimes = (RegimeKind.CRITICAL,)

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        beta = critical_beta(config)
        reference = critical_reference(config.alpha, beta, config.reference_samples, config.base_seed)
        rows, distances = ks_trend(PointTable(results), config.t_grid, "log_ratio", reference)
        return ks_verdict(self.name, rows, distances, config.significance.ks_threshold,
                          {"beta": beta, "reference_size": int(reference.size)})


def critical_suite(config: ExperimentConfig, results: Optional[Sequence[ReplicateResult]] = None) -> Verdict:
    """Atajo funcional de CriticalSuite.run; sin resultados ejecuta el lote."""
    return CriticalSuite().run(config, results)

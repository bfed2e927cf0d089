"""application/services/suites/variance_suite.py"""

from typing import Optional, Sequence

import numpy as np

from pam_localisation.application.services.suites.base_suite import (
    PointTable,
    ReplicateSuite,
    make_verdict,
    median_row,
    trend_test,
)
from pam_localisation.application.services.suites.critical_suite import (
    CRITICAL_MIN_REPLICATES,
    critical_beta,
    ks_trend,
    ks_verdict,
)
from pam_localisation.common.utils.statistics import is_strictly_monotone
from pam_localisation.domain.entities.regime_profile import RegimeKind
from pam_localisation.domain.limits.limit_objects import variance_reference
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult, Verdict


class VarianceSuite(ReplicateSuite):
    """
    Varianza condicional |K| Var Q_t(z).

    Subcrítico: mediana decreciente; supercrítico: creciente; crítico: KS
    frente a 2 beta sigma^2 B^2 con el criterio de tendencia de la suite crítica.
    """

    name = "variance"
    min_replicates = CRITICAL_MIN_REPLICATES

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        table = PointTable(results)
        if regime == RegimeKind.CRITICAL:
            beta = critical_beta(config)
            reference = variance_reference(config.alpha, beta, config.reference_samples, config.base_seed)
            rows, distances = ks_trend(table, config.t_grid, "conditional_variance", reference)
            return ks_verdict(self.name, rows, distances, config.significance.ks_threshold, {"beta": beta})

        increasing = regime == RegimeKind.SUPERCRITICAL
        ts, ys = table.pooled(config.t_grid, "conditional_variance")
        rows = [median_row(t, ys[ts == t], config.significance.confidence) for t in config.t_grid]
        if ys.size and np.all(ys[~np.isnan(ys)] == 0.0):
            return make_verdict(self.name, not increasing,
                                statistics={"degenerate_constant": True}, per_t=rows,
                                notes=["Varianza idénticamente nula (K vacío)"])

        medians = [row["median"] for row in rows]
        monotone = len(medians) < 2 or is_strictly_monotone(medians, increasing)
        statistics = {"strictly_monotone_medians": monotone}
        passed = monotone
        if len(config.t_grid) >= 2 and ys.size >= 3:
            trend = trend_test(ts, ys)
            expected = "increasing" if increasing else "decreasing"
            significant = trend.direction == expected and trend.pvalue < config.significance.trend
            statistics.update({"direction": trend.direction, "pvalue": trend.pvalue})
            passed = passed and significant
        return make_verdict(self.name, passed, statistics=statistics, per_t=rows)


def variance_suite(config: ExperimentConfig, results: Optional[Sequence[ReplicateResult]] = None) -> Verdict:
    """Atajo funcional de VarianceSuite.run; sin resultados ejecuta el lote."""
    return VarianceSuite().run(config, results)

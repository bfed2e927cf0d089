"""application/services/suites/phase_suite.py"""

from typing import Optional, Sequence

import numpy as np

from pam_localisation.application.services.suites.base_suite import (
    PointTable,
    ReplicateSuite,
    make_verdict,
    median_row,
    trend_test,
)
from pam_localisation.common.utils.statistics import is_strictly_monotone
from pam_localisation.domain.entities.regime_profile import RegimeKind
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult, Verdict


# |log_ratio| por debajo de este valor se considera nulo
DEGENERATE_TOL = 1e-9


class PhaseSuite(ReplicateSuite):
    """
    Transición de fase: la mediana de |log_ratio| decrece (subcrítico) o crece
    (supercrítico) a lo largo de la malla.

    La tendencia se contrasta con Mann-Kendall sobre los pares (t, |log_ratio|)
    agrupados, y además las medianas deben ser estrictamente monótonas.
    """

    name = "phase"
    min_times = 3
    allowed_regimes = (RegimeKind.SUBCRITICAL, RegimeKind.SUPERCRITICAL)

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        table = PointTable(results)
        level = config.significance.confidence
        increasing = regime == RegimeKind.SUPERCRITICAL
        expected = "increasing" if increasing else "decreasing"

        ts, ys = table.pooled(config.t_grid, "log_ratio")
        ys = np.abs(ys)
        rows = [median_row(t, ys[ts == t], level) for t in config.t_grid]
        medians = [row["median"] for row in rows]

        if ys.size and np.all(ys[~np.isnan(ys)] <= DEGENERATE_TOL):
            return make_verdict(
                self.name,
                not increasing,
                statistics={"expected": expected, "degenerate_constant": True},
                per_t=rows,
                notes=["|log_ratio| idénticamente nulo: tendencia constante degenerada"],
            )

        trend = trend_test(ts, ys)
        monotone = is_strictly_monotone(medians, increasing)
        significant = trend.direction == expected and trend.pvalue < config.significance.trend
        return make_verdict(
            self.name,
            monotone and significant,
            statistics={
                "expected": expected,
                "direction": trend.direction,
                "mann_kendall_s": trend.s,
                "mann_kendall_z": trend.z,
                "pvalue": trend.pvalue,
                "strictly_monotone_medians": monotone,
                "replicates_ok": table.ok_count,
            },
            per_t=rows,
        )


def phase_suite(config: ExperimentConfig, results: Optional[Sequence[ReplicateResult]] = None) -> Verdict:
    """Atajo funcional de PhaseSuite.run; sin resultados ejecuta el lote."""
    return PhaseSuite().run(config, results)

"""application/services/suites/localisation_suite.py"""

from typing import Optional, Sequence

from pam_localisation.application.services.suites.base_suite import PointTable, ReplicateSuite, make_verdict, median_row
from pam_localisation.common.utils.statistics import is_non_decreasing
from pam_localisation.domain.entities.regime_profile import RegimeKind
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult, Verdict


class LocalisationSuite(ReplicateSuite):
    """
    Localización en dos sitios: la mediana de v(Z1) + v(-Z1) no decrece en t
    y supera el umbral de masa en el mayor t.
    """

    name = "localisation"
    min_times = 3

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        table = PointTable(results)
        level = config.significance.confidence
        rows = [median_row(t, table.values(t, "two_site_mass"), level) for t in config.t_grid]
        medians = [row["median"] for row in rows]
        threshold = config.significance.mass_threshold

        monotone = is_non_decreasing(medians)
        above = medians[-1] > threshold
        return make_verdict(
            self.name,
            monotone and above,
            statistics={
                "non_decreasing": monotone,
                "final_median": medians[-1],
                "threshold": threshold,
                "replicates_ok": table.ok_count,
                "replicates_failed": table.failed_count,
            },
            per_t=rows,
        )


def localisation_suite(config: ExperimentConfig, results: Optional[Sequence[ReplicateResult]] = None) -> Verdict:
    """Atajo funcional de LocalisationSuite.run; sin resultados ejecuta el lote."""
    return LocalisationSuite().run(config, results)

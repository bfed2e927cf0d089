"""application/services/suites/zeta_suite.py"""

from typing import Sequence

import numpy as np

from pam_localisation.application.services.suites.base_suite import PointTable, ReplicateSuite, make_verdict
from pam_localisation.domain.entities.regime_profile import RegimeKind
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult, Verdict


ZETA_BOUNDS = (1e-3, 1e3)
IQR_RATIO_BOUNDS = (1.0 / 3.0, 3.0)


class ZetaSuite(ReplicateSuite):
    """
    Estabilidad de lambda^{1/2} zeta_t / a_t^{2/alpha}: percentiles 1 y 99
    dentro de [1e-3, 1e3] en cada t y razón de rangos intercuartílicos entre
    tiempos consecutivos en [1/3, 3].
    """

    name = "zeta"
    min_times = 2
    allowed_regimes = (RegimeKind.CRITICAL,)

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        table = PointTable(results)
        lo, hi = ZETA_BOUNDS
        rows = []
        for t in config.t_grid:
            data = table.rows(t, ["zeta", "zeta_empty"])
            values = data[data[:, 1] == 0, 0]
            if values.size:
                p1, q1, q3, p99 = np.percentile(values, [1, 25, 75, 99])
            else:
                p1 = q1 = q3 = p99 = float("nan")
            rows.append({"t": float(t), "n": int(values.size), "empty": int(data.shape[0] - values.size),
                         "p1": float(p1), "p99": float(p99), "iqr": float(q3 - q1)})

        bounded = all(lo <= row["p1"] and row["p99"] <= hi for row in rows)
        ratios = [b["iqr"] / a["iqr"] if a["iqr"] > 0 else float("nan") for a, b in zip(rows, rows[1:])]
        stable = all(IQR_RATIO_BOUNDS[0] <= r <= IQR_RATIO_BOUNDS[1] for r in ratios)
        return make_verdict(self.name, bounded and stable,
                            statistics={"bounded": bounded, "iqr_ratios": ratios, "stable": stable},
                            per_t=rows)

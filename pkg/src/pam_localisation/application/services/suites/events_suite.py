"""application/services/suites/events_suite.py"""

from typing import Sequence

import numpy as np

from pam_localisation.application.services.suites.base_suite import PointTable, ReplicateSuite, make_verdict
from pam_localisation.common.utils.statistics import is_non_decreasing
from pam_localisation.domain.entities.regime_profile import RegimeKind
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult, Verdict


# Ventana de N(Z1)/eta(Z1) considerada cercana a 1
RATIO_BAND = (0.8, 1.25)


class EventsSuite(ReplicateSuite):
    """
    Frecuencia de E1 ∧ E2 no decreciente en t; informa también la fracción
    de réplicas con Z1 = Z1* y con Ecr.
    """

    name = "events"
    min_times = 2

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        table = PointTable(results)
        rows = []
        for t in config.t_grid:
            data = table.rows(t, ["events.e1", "events.e2", "events.ecr", "z1", "z1_star"])
            joint = (data[:, 0] == 1) & (data[:, 1] == 1)
            rows.append({
                "t": float(t),
                "n": int(data.shape[0]),
                "e1": float(np.mean(data[:, 0])) if data.size else float("nan"),
                "e1_e2": float(np.mean(joint)) if data.size else float("nan"),
                "ecr": float(np.mean(data[:, 2])) if data.size else float("nan"),
                "z1_is_z1_star": float(np.mean(data[:, 3] == data[:, 4])) if data.size else float("nan"),
            })
        frequencies = [row["e1_e2"] for row in rows]
        monotone = is_non_decreasing(frequencies)
        return make_verdict(self.name, monotone,
                            statistics={"non_decreasing": monotone, "final_frequency": frequencies[-1]},
                            per_t=rows)


class CountingSuite(ReplicateSuite):
    """
    Concentración de N(Z1)/eta(Z1) cerca de 1: la fracción dentro de
    [0.8, 1.25] no decrece en t.
    """

    name = "counting"
    min_times = 2

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        table = PointTable(results)
        lo, hi = RATIO_BAND
        rows = []
        for t in config.t_grid:
            data = table.rows(t, ["n_z1", "eta_z1"])
            usable = data[data[:, 1] > 0]
            ratio = usable[:, 0] / usable[:, 1]
            rows.append({
                "t": float(t),
                "n": int(ratio.size),
                "median_ratio": float(np.median(ratio)) if ratio.size else float("nan"),
                "fraction_in_band": float(np.mean((ratio >= lo) & (ratio <= hi))) if ratio.size else float("nan"),
            })
        fractions = [row["fraction_in_band"] for row in rows]
        notes = [] if all(row["n"] for row in rows) else ["eta(Z1) nula en alguna réplica o tiempo"]
        monotone = is_non_decreasing(fractions)
        return make_verdict(self.name, monotone,
                            statistics={"non_decreasing": monotone, "band": list(RATIO_BAND)},
                            per_t=rows, notes=notes)

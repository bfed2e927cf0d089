"""application/services/suites/heuristics_suite.py"""

from typing import Any, Dict, List, Sequence

import numpy as np

from pam_localisation.application.services.suites.base_suite import ReplicateSuite, make_verdict
from pam_localisation.common.utils.statistics import is_strictly_monotone
from pam_localisation.domain.entities.regime_profile import RegimeKind
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult, Verdict


def heuristic_diagnostics(replicate: ReplicateResult) -> List[Dict[str, Any]]:
    """
    Compara por t el log_ratio del solver con Q_t y con su aproximación de Taylor.

    La cota de segundo orden es (zeta_t / xi(Z1)) (Q_t+ + Q_t-). Solo
    diagnóstico, sin veredicto.

    Args:
        replicate: Réplica exitosa

    Returns:
        Una fila por tiempo
    """
    rows = []
    for p in replicate.points:
        rows.append({
            "t": p.t,
            "seed": replicate.seed,
            "log_ratio": p.log_ratio,
            "q_t": p.q_t,
            "taylor_proxy": p.taylor_proxy,
            "gap_q": abs(p.log_ratio - p.q_t),
            "gap_taylor": abs(p.taylor_proxy - p.q_t),
            "second_order_bound": p.zeta_raw / p.xi_z1 * (p.q_plus + p.q_minus),
        })
    return rows


class HeuristicsSuite(ReplicateSuite):
    """
    Informe de |log_ratio - Q_t| por t. Es diagnóstico: el veredicto es
    siempre PASS y la tendencia de la mediana se informa aparte.
    """

    name = "heuristics"
    allowed_regimes = (RegimeKind.SUBCRITICAL, RegimeKind.CRITICAL)

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        rows = [row for r in results if r.ok for row in heuristic_diagnostics(r)]
        per_t = []
        for t in config.t_grid:
            gaps = np.array([row["gap_q"] for row in rows if row["t"] == t], dtype=float)
            taylor = np.array([row["gap_taylor"] for row in rows if row["t"] == t], dtype=float)
            bounds = np.array([row["second_order_bound"] for row in rows if row["t"] == t], dtype=float)
            per_t.append({
                "t": float(t),
                "n": int(gaps.size),
                "median_gap_q": float(np.nanmedian(gaps)) if gaps.size else float("nan"),
                "median_gap_taylor": float(np.nanmedian(taylor)) if taylor.size else float("nan"),
                "taylor_within_bound": float(np.mean(taylor <= bounds + 1e-12)) if taylor.size else float("nan"),
            })
        medians = [row["median_gap_q"] for row in per_t]
        decreasing = len(medians) > 1 and is_strictly_monotone(medians, increasing=False)
        return make_verdict(self.name, True, statistics={"median_gap_decreasing": decreasing}, per_t=per_t,
                            notes=["Diagnóstico sin criterio de aceptación"])

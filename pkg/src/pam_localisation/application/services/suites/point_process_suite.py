"""application/services/suites/point_process_suite.py"""

import math
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from pam_localisation.application.services.replicate_service import replicate_seed
from pam_localisation.application.services.suites.base_suite import Suite, make_verdict
from pam_localisation.common.exceptions.domain_exceptions import NumericalError
from pam_localisation.common.utils.log import logger
from pam_localisation.common.utils.statistics import chi_square_poisson, chi_square_pooled
from pam_localisation.domain.entities.regime_profile import ProfileFamily, RegimeKind, RegimeProfile
from pam_localisation.domain.limits.limit_objects import (
    cell_probabilities,
    density_normalisation,
    gap_quantiles,
    rho,
    sample_limit_B,
    x_quantiles,
)
from pam_localisation.domain.limits.point_process import (
    Box,
    box_counts,
    box_measure,
    box_measure_hat,
    default_boxes,
    rescaled_points,
)
from pam_localisation.domain.model.counting import classify_regime, resolve_regime
from pam_localisation.domain.model.potential import build_potential
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult, Verdict


NORMALISATION_TOL = 1e-6


def _box_rows(counts: np.ndarray, boxes: Sequence[Box], measures: Sequence[float],
              gof: float, process: str) -> List[Dict[str, Any]]:
    rows = []
    for j, (box, mu) in enumerate(zip(boxes, measures)):
        outcome = chi_square_poisson(counts[:, j], mu)
        rows.append({
            "process": process,
            "box": box.as_list(),
            "mu": mu,
            "mean_count": float(counts[:, j].mean()),
            "chi2": outcome.statistic,
            "dof": outcome.dof,
            "pvalue": outcome.pvalue,
            "pass": outcome.pvalue > gof,
        })
    return rows


def density_check(alpha: float, n_samples: int, bins: int, seed: int, gof: float) -> Dict[str, Any]:
    """
    Contraste chi-cuadrado de las muestras (X1, Y1) frente a p(x, y).

    Primero se confirma por cuadratura que p integra 1 con error 1e-6. La
    malla usa cuantiles de X1 y del gap W = Y1 - rho X1, y las celdas de
    esperado pequeño se fusionan.

    Raises:
        NumericalError: Si la normalización se desvía de 1
    """
    normalisation, error = density_normalisation(alpha)
    if abs(normalisation - 1.0) > NORMALISATION_TOL:
        logger.error(f"La densidad integra {normalisation} en lugar de 1")
        raise NumericalError("Normalización de p(x, y) fuera de tolerancia",
                             {"integral": normalisation, "error": error})
    samples = sample_limit_B(alpha, n_samples, seed)
    x_edges = x_quantiles(alpha, bins)
    w_edges = gap_quantiles(alpha, bins)
    top = np.finfo(float).max
    observed, _, _ = np.histogram2d(samples.x1, samples.y1 - rho(alpha) * samples.x1,
                                    bins=[np.minimum(x_edges, top), np.minimum(w_edges, top)])
    expected = n_samples * cell_probabilities(alpha, x_edges, w_edges)
    outcome = chi_square_pooled(observed, expected)
    return {
        "normalisation": normalisation,
        "normalisation_error": error,
        "samples": int(n_samples),
        "bins": int(bins),
        "chi2": outcome.statistic,
        "dof": outcome.dof,
        "pvalue": outcome.pvalue,
        "pass": outcome.pvalue > gof,
    }


def point_process_suite(alpha: float, profile: RegimeProfile, s: float, n_fields: int,
                        boxes: Optional[Sequence[Box]] = None, seed: int = 0, gof: float = 0.001,
                        density_samples: int = 0, grid_bins: int = 20) -> Verdict:
    """
    Convergencia de los campos reescalados a los procesos de Poisson límite.

    Para cada caja se cuentan los puntos {(n/s, xi(n)/s^{1/alpha}): n en D}
    en n_fields campos independientes y se contrastan con Poisson(mu(caja)).
    En el régimen crítico se añade el proceso sobre E con la escala crítica
    frente a Poisson(mu_hat(caja)). Con density_samples > 0 se contrasta
    también la densidad de (X1, Y1).

    Args:
        alpha: Índice de cola
        profile: Perfil de duplicación
        s: Escala (> 1)
        n_fields: Campos independientes
        boxes: Cajas disjuntas (por defecto default_boxes)
        seed: Semilla base
        gof: Nivel de bondad de ajuste (PASS si p > gof)
        density_samples: Muestras para el contraste de densidad (0 lo omite)
        grid_bins: Bins por eje de la malla de densidad

    Returns:
        Veredicto

    Raises:
        InvalidBoxError: Si alguna caja toca la frontera prohibida
    """
    boxes = list(boxes) if boxes is not None else default_boxes(alpha)
    measures = [box_measure(b, alpha) for b in boxes]
    critical = resolve_regime(profile) == RegimeKind.CRITICAL
    if critical:
        beta = profile.beta if profile.family == ProfileFamily.CRITICAL else classify_regime(profile).beta_hat
        hat_measures = [box_measure_hat(b, alpha, beta) for b in boxes]

    L = int(math.ceil(max(b.x1 for b in boxes) * s))
    counts = np.zeros((n_fields, len(boxes)), dtype=int)
    hat_counts = np.zeros((n_fields, len(boxes)), dtype=int)
    for i in range(n_fields):
        field = build_potential(profile, L, replicate_seed(seed, i))
        x, y = rescaled_points(field, s)
        counts[i] = box_counts(x, y, boxes)
        if critical:
            xh, yh = rescaled_points(field, s, critical=True)
            hat_counts[i] = box_counts(xh, yh, boxes)
    logger.info(f"Proceso puntual: {n_fields} campos con L={L}")

    rows = _box_rows(counts, boxes, measures, gof, "D")
    if critical:
        rows += _box_rows(hat_counts, boxes, hat_measures, gof, "E")
    passed = all(row["pass"] for row in rows)
    statistics: Dict[str, Any] = {"s": s, "n_fields": int(n_fields), "alpha": alpha, "critical": critical}

    if density_samples > 0:
        density = density_check(alpha, density_samples, grid_bins, seed, gof)
        statistics["density"] = density
        passed = passed and density["pass"]
    return make_verdict("point_process", passed, statistics=statistics, per_t=rows)


class PointProcessSuite(Suite):
    """Suite del proceso puntual con los parámetros de config.point_process."""

    name = "point_process"
    needs_replicates = False

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        params = config.point_process
        boxes = [Box.from_sequence(b) for b in params.boxes] if params.boxes else None
        return point_process_suite(config.alpha, config.build_profile(), params.s, params.n_fields, boxes,
                                   config.base_seed, config.significance.goodness_of_fit,
                                   params.density_samples, params.grid_bins)

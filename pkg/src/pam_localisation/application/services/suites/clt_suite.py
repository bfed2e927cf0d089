"""application/services/suites/clt_suite.py"""

import math
from typing import Sequence

import numpy as np
from scipy import stats

from pam_localisation.application.services.suites.base_suite import Suite, make_verdict
from pam_localisation.common.exceptions.domain_exceptions import DomainError, UnderpoweredError, ValidationError
from pam_localisation.common.utils.log import logger
from pam_localisation.common.utils.statistics import ks_one_sample
from pam_localisation.domain.entities.regime_profile import RegimeKind
from pam_localisation.domain.localisation.moments import analytic_q_moments, q_values
from pam_localisation.domain.model.pareto import check_alpha
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult, Verdict


MIN_K_SIZE = 1000
MAX_THETA_OVER_XI = 1e-2
_BATCH = 50
# alpha = 2: los sitios con xi cerca de xi(Z1) aportan una fracción 1/log(xi/theta)
# de la varianza; se necesita k (theta/xi)^2 de orden 1.
THETA_OVER_XI = 1e-3
THETA_OVER_XI_LOG = 1e-2


def default_theta_over_xi(alpha: float) -> float:
    """theta/xi de trabajo: 1e-2 en el caso logarítmico alpha = 2, 1e-3 si alpha > 2."""
    return THETA_OVER_XI_LOG if alpha == 2 else THETA_OVER_XI


def clt_suite(alpha: float, theta_over_xi: float, k_size: int, seed: int, n_sums: int = 2000,
              threshold: float = 0.05) -> Verdict:
    """
    TCL condicional simulado directamente.

    Cada suma usa k_size valores i.i.d. xi/xi(Z1) = (theta/xi) Pareto(alpha),
    repartidos a partes iguales entre K+ y K-, y forma Q_t = Q_t+ - Q_t- con
    Q_t(z) nulo si el valor supera 1. Centra con (|K+| - |K-|) por la media por
    cuadratura y escala con la desviación típica por cuadratura de Q_t. PASS si la
    distancia KS a la normal estándar es menor que `threshold`.

    Args:
        alpha: Índice de cola
        theta_over_xi: theta_t / xi(Z1) (<= 1e-2)
        k_size: Sumandos por suma (>= 1e3)
        seed: Semilla
        n_sums: Número de sumas independientes
        threshold: Umbral de la distancia KS

    Returns:
        Veredicto

    Raises:
        UnderpoweredError: Si k_size < 1e3
        ValidationError: Si theta/xi > 1e-2
        DomainError: Si la varianza por cuadratura es nula
    """
    alpha = check_alpha(alpha)
    if k_size < MIN_K_SIZE:
        raise UnderpoweredError("k_size", int(k_size), MIN_K_SIZE)
    if not 0 < theta_over_xi <= MAX_THETA_OVER_XI:
        raise ValidationError("theta/xi debe estar en (0, 1e-2]", {"theta_over_xi": theta_over_xi})

    mean = analytic_q_moments(theta_over_xi, 1.0, alpha, 1).exact
    second = analytic_q_moments(theta_over_xi, 1.0, alpha, 2).exact
    variance = second - mean ** 2
    if not variance > 0:
        raise DomainError("Varianza nula de Q_t(z)", {"theta_over_xi": theta_over_xi, "variance": variance})

    rng = np.random.default_rng(int(seed))
    k_plus = (k_size + 1) // 2
    centre = (2 * k_plus - k_size) * mean
    scale = math.sqrt(k_size * variance)
    sums = np.empty(n_sums)
    for start in range(0, n_sums, _BATCH):
        rows = min(_BATCH, n_sums - start)
        y = theta_over_xi * (1.0 - rng.random((rows, k_size))) ** (-1.0 / alpha)
        q = q_values(y, 1.0)
        q_t = q[:, :k_plus].sum(axis=1) - q[:, k_plus:].sum(axis=1)
        sums[start:start + rows] = (q_t - centre) / scale

    outcome = ks_one_sample(sums, stats.norm.cdf)
    logger.debug(f"TCL: alpha={alpha}, theta/xi={theta_over_xi}, KS={outcome.statistic:.4f}")
    return make_verdict(
        "clt",
        outcome.statistic < threshold,
        statistics={
            "alpha": alpha,
            "theta_over_xi": theta_over_xi,
            "k_size": int(k_size),
            "n_sums": int(n_sums),
            "ks": outcome.statistic,
            "v_mean": float(sums.mean()),
            "pvalue": outcome.pvalue,
            "threshold": threshold,
            "mean": mean,
            "variance": variance,
            "asymptotic_second_moment": analytic_q_moments(theta_over_xi, 1.0, alpha, 2).asymptotic,
        },
    )


class CltSuite(Suite):
    """Suite del TCL condicional con los parámetros de config.clt."""

    name = "clt"
    needs_replicates = False

    def evaluate(self, config: ExperimentConfig, regime: RegimeKind,
                 results: Sequence[ReplicateResult]) -> Verdict:
        params = config.clt
        ratio = params.theta_over_xi if params.theta_over_xi is not None else default_theta_over_xi(config.alpha)
        return clt_suite(config.alpha, ratio, params.k_size, config.base_seed,
                         params.n_sums, config.significance.clt_ks)

"""application/services/replicate_service.py"""

from typing import List, Optional

import numpy as np

from pam_localisation.application.services.localisation_service import LocalisationService, LocalisationSnapshot
from pam_localisation.application.services.solver_service import SolverService
from pam_localisation.common.exceptions.domain_exceptions import DomainError, PamError
from pam_localisation.common.utils.log import logger
from pam_localisation.common.value_objects.scales import Scales
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.localisation.diagnostics import taylor_proxy, zeta_statistic
from pam_localisation.domain.localisation.moments import conditional_variance
from pam_localisation.domain.localisation.scales import make_scales
from pam_localisation.domain.model.counting import eta
from pam_localisation.domain.model.potential import build_potential
from pam_localisation.domain.solver.observables import observables
from pam_localisation.domain.solver.state import SolutionState
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import PointFailure, ReplicateResult, TimePointRecord


# Errores que se registran en lugar de abortar el lote
POINT_ERRORS = (PamError, ArithmeticError, ValueError)


def replicate_seed(base_seed: int, index: int) -> int:
    """Semilla de 64 bits de la réplica `index`, derivada con SeedSequence([base_seed, index])."""
    state = np.random.SeedSequence([int(base_seed), int(index)]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _variance(snapshot: LocalisationSnapshot, xi_z1: float, alpha: float) -> Optional[float]:
    """|K| Var Q_t(z) por cuadratura; None si theta/xi cae fuera de (0, 1/2)."""
    if snapshot.kset.size == 0:
        return 0.0
    try:
        return snapshot.kset.size * conditional_variance(snapshot.kset.theta_t, xi_z1, alpha).exact
    except DomainError:
        return None


def _point(field: PotentialField, state: SolutionState, snapshot: LocalisationSnapshot,
           service: LocalisationService) -> TimePointRecord:
    sites, kset, stats = snapshot.sites, snapshot.kset, snapshot.stats
    obs = observables(state, sites)
    xi_z1 = field.xi_at(sites.z1)
    zeta = zeta_statistic(field, sites, snapshot.scales)
    return TimePointRecord(
        t=state.t,
        log_ratio=obs.log_ratio,
        infinite_ratio=obs.infinite_ratio,
        two_site_mass=obs.two_site_mass,
        top_site_mass=obs.top_site_mass,
        log_mass=state.log_mass,
        leak_rate=state.leak_rate,
        z1=sites.z1,
        z2=sites.z2,
        z1_star=sites.z1_star,
        stable=sites.stable,
        xi_z1=xi_z1,
        n_z1=stats.n_z1,
        eta_z1=eta(service.profile, sites.z1),
        theta_t=kset.theta_t,
        k_plus=kset.size_plus,
        k_minus=kset.size_minus,
        m_plus=stats.m_plus,
        m_minus=stats.m_minus,
        sig_plus=stats.sig_plus,
        sig_minus=stats.sig_minus,
        m_bar=stats.m_bar,
        s_bar_inv=stats.s_bar_inv,
        q_plus=stats.q_plus,
        q_minus=stats.q_minus,
        q_t=stats.q_t,
        conditional_variance=_variance(snapshot, xi_z1, field.alpha),
        taylor_proxy=taylor_proxy(field, kset, xi_z1),
        zeta=zeta.value,
        zeta_raw=zeta.raw,
        zeta_empty=zeta.empty,
        events=snapshot.flags.as_dict(),
    )


def _solve_point(field: PotentialField, scales: Scales, radius: int, config: ExperimentConfig,
                 solver: SolverService, service: LocalisationService) -> TimePointRecord:
    """Localiza en t y resuelve en la ventana ceil(R_t) + 1 alrededor del origen."""
    snapshot = service.localise(field, scales.t, radius=radius, scales=scales)
    window = min(config.window.solve_window(radius, snapshot.scales.R_t), field.L)
    logger.debug(f"t={scales.t}: Z1={snapshot.sites.z1}, ventana del solver {window}")
    state = solver.solve(field, [scales.t], window)[0]
    return _point(field, state, snapshot, service)


def _run(config: ExperimentConfig, seed: int, index: int, grid: List[float]) -> ReplicateResult:
    profile = config.build_profile()
    service = LocalisationService(profile, config.regime)
    policy = config.window

    all_scales = [make_scales(t, config.alpha) for t in grid]
    radii = [policy.search_radius(s) for s in all_scales]
    field = build_potential(profile, policy.field_window(max(radii)), seed)
    solver = SolverService(config.solver.method, config.solver.tolerance, config.solver.leak_threshold)

    points, failures = [], []
    for scales, radius in zip(all_scales, radii):
        try:
            points.append(_solve_point(field, scales, radius, config, solver, service))
        except POINT_ERRORS as e:
            logger.warning(f"Réplica {index} (seed={seed}) fallida en t={scales.t}: {e}")
            failures.append(PointFailure(t=scales.t, error=str(e), error_type=e.__class__.__name__))

    if not points:
        first = failures[0]
        return ReplicateResult(index=index, seed=seed, status="failed", error=first.error,
                               error_type=first.error_type, failures=failures)
    return ReplicateResult(index=index, seed=seed, points=points, failures=failures)


def run_replicate(config: ExperimentConfig, seed: int, index: int = 0,
                  t: Optional[float] = None) -> ReplicateResult:
    """
    Ejecuta una réplica: campo, solver, observables, maximizadores, K, momentos y eventos.

    Un único campo cubre toda la malla (ventana del mayor t). Cada tiempo se
    localiza y se integra por separado, en la ventana ceil(R_t) + 1, y sus
    errores quedan en `failures` sin descartar los demás tiempos. Si falla
    el campo o todos los tiempos el registro es 'failed'; nunca se propaga.

    Args:
        config: Configuración del experimento
        seed: Semilla de la réplica
        index: Índice de la réplica en el lote
        t: Restringe la réplica a un único tiempo (opcional)

    Returns:
        Registro de la réplica
    """
    grid = [float(t)] if t is not None else [float(v) for v in config.t_grid]
    try:
        result = _run(config, seed, index, grid)
    except POINT_ERRORS as e:
        logger.error(f"Réplica {index} (seed={seed}) fallida: {e}")
        return ReplicateResult(index=index, seed=seed, status="failed", error=str(e),
                               error_type=e.__class__.__name__)
    if not result.ok:
        logger.error(f"Réplica {index} (seed={seed}) fallida en todos los tiempos: {result.error}")
    else:
        logger.debug(f"Réplica {index} (seed={seed}) completada con {len(result.failures)} tiempos fallidos")
    return result

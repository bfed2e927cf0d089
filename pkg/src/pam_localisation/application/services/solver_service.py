"""application/services/solver_service.py"""

from typing import List, Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from pam_localisation.common.exceptions.domain_exceptions import OutOfWindowError, ValidationError
from pam_localisation.common.factories.propagator_factory import PropagatorFactory
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.solver.state import SolutionState


# Cota de xi_max * t: el estado es log u, y log U conserva ~1e-5 absoluto en doble precisión
MAX_LOG_GROWTH = 1e11
DEFAULT_TOLERANCE = 1e-8
DEFAULT_LEAK_THRESHOLD = 1e-6


class SolverService:
    """
    Servicio que integra el PAM en una ventana y produce estados normalizados.
    """

    def __init__(self, method: str = PropagatorFactory.DEFAULT, tolerance: float = DEFAULT_TOLERANCE,
                 leak_threshold: float = DEFAULT_LEAK_THRESHOLD):
        """
        Inicializa el servicio con un integrador de la fábrica.

        Args:
            method: Nombre del integrador (bdf, radau, krylov)
            tolerance: Tolerancia local sobre log u
            leak_threshold: Tasa de fuga por el borde a partir de la cual se avisa
        """
        if not tolerance > 0:
            raise ValidationError("La tolerancia debe ser positiva", {"tolerance": tolerance})
        self.method = method
        self.tolerance = float(tolerance)
        self.leak_threshold = float(leak_threshold)
        self.propagator = PropagatorFactory.create_propagator(method)

    def _check_grid(self, field: PotentialField, t_grid: Sequence[float], window: int) -> np.ndarray:
        grid = np.asarray(t_grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise ValidationError("La malla temporal no puede estar vacía")
        if not grid[0] > 0 or np.any(np.diff(grid) <= 0):
            raise ValidationError("La malla temporal debe ser positiva y creciente", {"t_grid": grid.tolist()})
        if window > field.L:
            raise OutOfWindowError(window, field.L)
        xi_max = float(field.restrict(window).xi_max)
        if xi_max * grid[-1] > MAX_LOG_GROWTH:
            logger.error(f"xi_max*t={xi_max * grid[-1]:.3g} supera el margen {MAX_LOG_GROWTH:g}")
            raise ValidationError("xi_max * t excede la precisión de log U",
                                  {"xi_max": xi_max, "t_max": float(grid[-1]), "limit": MAX_LOG_GROWTH})
        return grid

    def solve(self, field: PotentialField, t_grid: Sequence[float],
              L_solve: Optional[int] = None) -> List[SolutionState]:
        """
        Integra du/dt = Δu + xi u desde δ_0 con borde absorbente en |z| > L_solve.

        Args:
            field: Campo de potencial
            t_grid: Tiempos crecientes y positivos
            L_solve: Semiancho de la ventana (por defecto la del campo)

        Returns:
            Un estado por tiempo de la malla

        Raises:
            ValidationError: Si la malla o el margen xi_max t no son válidos
            OutOfWindowError: Si L_solve supera la ventana del campo
            StiffnessError: Si el paso del integrador colapsa
        """
        window = field.L if L_solve is None else int(L_solve)
        grid = self._check_grid(field, t_grid, window)
        xi = field.restrict(window).xi

        logger.info(f"Integrando con {self.method}: L={window}, t={grid.tolist()}")
        propagation = self.propagator.propagate(xi, grid, self.tolerance)

        states = []
        for tg, log_u in zip(grid, propagation.log_u):
            log_mass = float(logsumexp(log_u))
            log_v = log_u - log_mass
            v = np.exp(log_v)
            leak = float(v[0] + v[-1]) if window > 0 else float(2.0 * v[0])
            if leak > self.leak_threshold:
                logger.warning(f"Ventana pequeña: fuga por el borde {leak:.3g} por unidad de tiempo en t={tg}")
            states.append(SolutionState(
                t=float(tg),
                log_mass=log_mass,
                log_v=log_v,
                window=window,
                leak_rate=leak,
                growth_rate=float(np.dot(xi, v)) - leak,
                diagnostics=propagation.diagnostics,
            ))
        logger.debug(f"Integración terminada: {propagation.diagnostics.as_dict()}")
        return states


def solve_pam(field: PotentialField, t_grid: Sequence[float], L_solve: Optional[int] = None,
              method: str = PropagatorFactory.DEFAULT, tolerance: float = DEFAULT_TOLERANCE) -> List[SolutionState]:
    """Atajo funcional de SolverService.solve."""
    return SolverService(method=method, tolerance=tolerance).solve(field, t_grid, L_solve)

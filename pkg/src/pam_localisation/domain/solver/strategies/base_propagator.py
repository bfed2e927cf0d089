"""domain/solver/strategies/base_propagator.py"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from pam_localisation.domain.solver.state import SolverDiagnostics


@dataclass(frozen=True, eq=False)
class Propagation:
    """log u(t, z) en cada tiempo de la malla; filas por tiempo, columnas z = -W..W."""
    t_grid: np.ndarray
    log_u: np.ndarray
    diagnostics: SolverDiagnostics


class Propagator(ABC):
    """
    Interfaz base de los integradores de du/dt = Δu + xi u con u(0) = δ_0
    y borde absorbente fuera de la ventana.

    Las implementaciones devuelven log u para que la masa sea representable
    aunque xi t supere el rango de la coma flotante.
    """

    name = "base"

    @abstractmethod
    def propagate(self, xi: np.ndarray, t_grid: np.ndarray, tolerance: float) -> Propagation:
        """
        Integra el sistema en la ventana dada.

        Args:
            xi: Potencial en z = -W..W (longitud 2W+1)
            t_grid: Tiempos crecientes y positivos
            tolerance: Tolerancia local sobre log u

        Returns:
            log u en la malla y diagnósticos
        """
        pass

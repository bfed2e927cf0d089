"""domain/solver/strategies/krylov_propagator.py"""

import math

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import expm_multiply

from pam_localisation.common.exceptions.domain_exceptions import NumericalError
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.solver.state import SolverDiagnostics
from pam_localisation.domain.solver.strategies.base_propagator import Propagation, Propagator


def shifted_generator(xi: np.ndarray) -> sparse.csr_matrix:
    """tridiag(1, xi - 2 - max(xi), 1) con borde absorbente."""
    n = xi.size
    off = np.ones(n - 1)
    return sparse.diags([off, xi - 2.0 - xi.max(), off], [-1, 0, 1], shape=(n, n), format="csr")


class KrylovPropagator(Propagator):
    """
    Sistema lineal normalizado propagado con expm_multiply entre tiempos de la malla.

    El vector se renormaliza tras cada tramo; los sitios cuya masa relativa
    cae bajo el rango de la coma flotante quedan en log u = -inf, por lo que
    solo es adecuado para ventanas pequeñas.
    """

    name = "krylov"

    def propagate(self, xi: np.ndarray, t_grid: np.ndarray, tolerance: float) -> Propagation:
        xi = np.asarray(xi, dtype=float)
        t_grid = np.asarray(t_grid, dtype=float)
        generator = shifted_generator(xi)
        shift = float(xi.max())
        w = (xi.size - 1) // 2

        vec = np.zeros(xi.size)
        vec[w] = 1.0
        log_scale = 0.0
        t_prev = 0.0
        rows = []
        for tg in t_grid:
            vec = expm_multiply(generator * (tg - t_prev), vec)
            total = float(vec.sum())
            if not total > 0 or not math.isfinite(total):
                logger.error(f"Masa no representable en t={tg} con expm_multiply")
                raise NumericalError("Masa no representable", {"t": float(tg)})
            vec = np.maximum(vec / total, 0.0)
            log_scale += math.log(total)
            with np.errstate(divide="ignore"):
                rows.append(np.log(vec) + log_scale + shift * tg)
            t_prev = tg

        diagnostics = SolverDiagnostics(method=self.name, steps=int(t_grid.size), tolerance=float(tolerance))
        return Propagation(t_grid=t_grid, log_u=np.vstack(rows), diagnostics=diagnostics)

"""domain/solver/strategies/log_space_propagator.py"""

from typing import Callable, List, Tuple

import numpy as np
from scipy import integrate, sparse

from pam_localisation.common.exceptions.domain_exceptions import StiffnessError
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.pathsum.simplex import direct_path_log_weights
from pam_localisation.domain.solver.state import SolverDiagnostics
from pam_localisation.domain.solver.strategies.base_propagator import Propagation, Propagator


# Límite de las diferencias de log entre vecinos antes de exponenciar
_MAX_EXPONENT = 700.0
_START_TIME = 1e-8


def start_time(t_grid: np.ndarray) -> float:
    return min(_START_TIME, 0.5 * float(t_grid[0]))


def initial_log_state(xi: np.ndarray, t0: float) -> np.ndarray:
    """log u(t0, z) aproximado por los caminos rectos 0 -> z."""
    w = (xi.size - 1) // 2
    pos = direct_path_log_weights(t0, xi[w:])
    neg = direct_path_log_weights(t0, xi[w::-1])
    return np.concatenate([neg[:0:-1], pos])


class _LogSystem:
    """
    dl_i/dt = xi_i - 2 - shift + up_i e^{l_{i+1}-l_i} + down_i e^{l_{i-1}-l_i}.

    up/down valen 0 en el borde absorbente; en el sistema plegado el sitio 0
    recibe de su vecino 1 por ambos lados (up_0 = 2).
    """

    def __init__(self, xi: np.ndarray, up: np.ndarray, down: np.ndarray, shift: float):
        self.rate = xi - 2.0 - shift
        self.up = up
        self.down = down

    def _fluxes(self, ell: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        up = np.zeros_like(ell)
        down = np.zeros_like(ell)
        if ell.size > 1:
            diff = np.diff(ell)
            up[:-1] = self.up[:-1] * np.exp(np.minimum(diff, _MAX_EXPONENT))
            down[1:] = self.down[1:] * np.exp(np.minimum(-diff, _MAX_EXPONENT))
        return up, down

    def rhs(self, _t: float, ell: np.ndarray) -> np.ndarray:
        up, down = self._fluxes(ell)
        return self.rate + up + down

    def jacobian(self, _t: float, ell: np.ndarray) -> sparse.csc_matrix:
        up, down = self._fluxes(ell)
        n = ell.size
        if n == 1:
            return sparse.csc_matrix((1, 1))
        return sparse.diags([down[1:], -(up + down), up[:-1]], [-1, 0, 1], shape=(n, n), format="csc")


class LogSpacePropagator(Propagator):
    """
    Integrador implícito adaptativo sobre l = log u - t max(xi).

    Si la ventana es simétrica se integra el semirretículo plegado [0, W],
    lo que conserva v(z) = v(-z) exactamente.
    """

    name = "log_space"
    method = "BDF"

    def _system(self, xi: np.ndarray, folded: bool) -> Tuple[_LogSystem, Callable]:
        w = (xi.size - 1) // 2
        shift = float(xi.max())
        if folded:
            half = xi[w:]
            up = np.ones(half.size)
            up[0] = 2.0
            up[-1] = 0.0
            down = np.ones(half.size)
            down[0] = 0.0
            return _LogSystem(half, up, down, shift), lambda h: np.concatenate([h[:0:-1], h])
        up = np.ones(xi.size)
        up[-1] = 0.0
        down = np.ones(xi.size)
        down[0] = 0.0
        return _LogSystem(xi, up, down, shift), lambda h: h

    def propagate(self, xi: np.ndarray, t_grid: np.ndarray, tolerance: float) -> Propagation:
        xi = np.asarray(xi, dtype=float)
        t_grid = np.asarray(t_grid, dtype=float)
        folded = xi.size > 1 and np.array_equal(xi, xi[::-1])
        system, unfold = self._system(xi, folded)
        shift = float(xi.max())

        t0 = start_time(t_grid)
        full0 = initial_log_state(xi, t0) - shift * t0
        w = (xi.size - 1) // 2
        y0 = full0[w:] if folded else full0

        solver = integrate.BDF if self.method == "BDF" else integrate.Radau
        ode = solver(system.rhs, t0, y0, t_bound=float(t_grid[-1]), rtol=1e-11,
                     atol=tolerance, jac=system.jacobian)

        rows: List[np.ndarray] = []
        pending = 0
        steps = 0
        min_step, max_step = np.inf, 0.0
        while pending < t_grid.size:
            if ode.status != "running":
                break
            t_old = ode.t
            message = ode.step()
            if ode.status == "failed":
                logger.error(f"Integrador {self.method} falló en t={ode.t}: {message}")
                raise StiffnessError("El paso del integrador colapsó", {
                    "method": self.method, "t": ode.t, "steps": steps,
                    "min_step": min_step, "message": message,
                })
            steps += 1
            h = ode.t - t_old
            min_step, max_step = min(min_step, h), max(max_step, h)
            dense = ode.dense_output()
            while pending < t_grid.size and t_grid[pending] <= ode.t:
                tg = t_grid[pending]
                rows.append(unfold(dense(tg)) + shift * tg)
                pending += 1
            logger.debug(f"Paso {steps}: t={ode.t:.6g}, h={h:.3g}")

        diagnostics = SolverDiagnostics(
            method=self.name, steps=steps,
            min_step=float(min_step) if steps else None, max_step=float(max_step) if steps else None,
            nfev=int(ode.nfev), njev=int(ode.njev), nlu=int(ode.nlu),
            tolerance=float(tolerance), folded=bool(folded),
        )
        return Propagation(t_grid=t_grid, log_u=np.vstack(rows), diagnostics=diagnostics)


class BdfPropagator(LogSpacePropagator):
    """BDF de orden variable con jacobiano tridiagonal disperso."""
    name = "bdf"
    method = "BDF"


class RadauPropagator(LogSpacePropagator):
    """Radau IIA de orden 5 con jacobiano tridiagonal disperso."""
    name = "radau"
    method = "Radau"

"""domain/limits/point_process.py"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy import integrate

from pam_localisation.common.exceptions.domain_exceptions import InvalidBoxError
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.limits.limit_objects import rho


@dataclass(frozen=True)
class Box:
    """Caja (x0, x1] x [y0, y1) del plano reescalado; y1 puede ser infinito."""
    x0: float
    x1: float
    y0: float
    y1: float = math.inf

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> "Box":
        if len(values) != 4:
            raise InvalidBoxError("Una caja requiere [x0, x1, y0, y1]", {"box": list(values)})
        return cls(*(float(v) for v in values))

    def as_list(self) -> List[float]:
        return [self.x0, self.x1, self.y0, self.y1]


def default_boxes(alpha: float) -> List[Box]:
    """Cuatro cajas disjuntas separadas de y = rho x (la primera de medida cerrada c^{-alpha})."""
    r = rho(alpha)
    return [
        Box(0.0, 1.0, 2.0 * r, math.inf),
        Box(0.0, 1.0, 1.4 * r, 2.0 * r),
        Box(1.0, 2.0, 2.4 * r, math.inf),
        Box(1.0, 2.0, 2.1 * r, 2.4 * r),
    ]


def _check_box(box: Box, alpha: float, hat: bool) -> None:
    if not (0.0 <= box.x0 < box.x1 < math.inf) or not (0.0 < box.y0 < box.y1):
        raise InvalidBoxError("Caja no acotada o vacía", {"box": box.as_list()})
    if not hat and box.y0 <= rho(alpha) * box.x1:
        raise InvalidBoxError("La caja toca la frontera y = rho x del proceso", {"box": box.as_list(),
                                                                                 "rho": rho(alpha)})


def _y_mass(box: Box, alpha: float) -> float:
    upper = 0.0 if math.isinf(box.y1) else box.y1 ** -alpha
    return box.y0 ** -alpha - upper


def box_measure(box: Box, alpha: float) -> float:
    """mu(caja) = (x1 - x0)(y0^{-alpha} - y1^{-alpha}) para la intensidad dx alpha y^{-alpha-1} dy."""
    _check_box(box, alpha, hat=False)
    return (box.x1 - box.x0) * _y_mass(box, alpha)


def box_measure_hat(box: Box, alpha: float, beta: float) -> float:
    """
    Medida del proceso de sitios no duplicados en el régimen crítico.

    alpha > 2: beta (x1^{2/alpha} - x0^{2/alpha})(y0^{-alpha} - y1^{-alpha});
    alpha = 2: beta (x1 - x0)(y0^{-2} - y1^{-2}).
    """
    _check_box(box, alpha, hat=True)
    if alpha > 2:
        x_mass = beta * (box.x1 ** (2.0 / alpha) - box.x0 ** (2.0 / alpha))
    else:
        x_mass = beta * (box.x1 - box.x0)
    return x_mass * _y_mass(box, alpha)


def box_measure_quad(box: Box, alpha: float, beta: float = 1.0, hat: bool = False) -> float:
    """Misma medida por cuadratura doble de la densidad de intensidad."""
    _check_box(box, alpha, hat)
    if hat and alpha > 2:
        def x_density(x: float) -> float:
            return (2.0 * beta / alpha) * x ** (2.0 / alpha - 1.0)
    elif hat:
        def x_density(x: float) -> float:
            return beta
    else:
        def x_density(x: float) -> float:
            return 1.0
    value, _ = integrate.dblquad(lambda y, x: x_density(x) * alpha * y ** (-alpha - 1.0),
                                 box.x0, box.x1, box.y0, box.y1, epsabs=1e-12, epsrel=1e-10)
    return float(value)


def rescaled_points(field: PotentialField, s: float, critical: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    Puntos (n/s, xi(n)/escala) sobre n >= 1 en D, o en E si `critical`.

    Escala s^{1/alpha} para D; s^{2/alpha^2} (alpha > 2) o (s/log s)^{1/2}
    (alpha = 2) para E.
    """
    alpha = field.alpha
    n = np.arange(1, field.L + 1)
    mask = field.nondup[1:] if critical else field.dup[1:]
    if not critical:
        scale = s ** (1.0 / alpha)
    elif alpha > 2:
        scale = s ** (2.0 / alpha ** 2)
    else:
        scale = math.sqrt(s / math.log(s))
    return n[mask] / s, field.xi_positive[1:][mask] / scale


def box_counts(x: np.ndarray, y: np.ndarray, boxes: Sequence[Box]) -> List[int]:
    """Número de puntos en cada caja (semiabierta por la izquierda en x y por arriba en y)."""
    return [int(np.count_nonzero((x > b.x0) & (x <= b.x1) & (y >= b.y0) & (y < b.y1))) for b in boxes]

"""common/value_objects/scales.py"""

import math
from dataclasses import dataclass, replace
from typing import Optional


@dataclass(frozen=True)
class Scales:
    """
    Escalas asintóticas asociadas a un tiempo t y un índice alpha.

    r_t = (t/log t)^{alpha/(alpha-1)}, a_t = (t/log t)^{1/(alpha-1)},
    lambda_t = 1 (alpha > 2) o log t (alpha = 2), f_t < 1 < g_t.
    R_t queda en None hasta conocer Z1.
    """
    t: float
    alpha: float
    r_t: float
    a_t: float
    lambda_t: float
    f_t: float
    g_t: float
    R_t: Optional[float] = None

    @property
    def log_t(self) -> float:
        return math.log(self.t)

    @property
    def search_radius(self) -> int:
        """rho_0 = ceil(4 g_t r_t)."""
        return int(math.ceil(4.0 * self.g_t * self.r_t))

    def with_radius(self, z1: int) -> "Scales":
        """Copia con R_t = Z1 (1 + f_t)."""
        return replace(self, R_t=abs(z1) * (1.0 + self.f_t))


def lam(alpha: float, x: float) -> float:
    """lambda evaluada en la escala x: 1 si alpha > 2, log x si alpha = 2."""
    return 1.0 if alpha > 2 else math.log(x)

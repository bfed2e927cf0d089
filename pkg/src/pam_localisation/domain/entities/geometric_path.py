"""domain/entities/geometric_path.py"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import ValidationError


@dataclass(frozen=True)
class GeometricPath:
    """Camino de vecinos más próximos y_0..y_l en Z."""
    sites: Tuple[int, ...]

    def __post_init__(self):
        if len(self.sites) == 0:
            raise ValidationError("Un camino requiere al menos un sitio")
        steps = np.diff(np.asarray(self.sites, dtype=np.int64))
        if np.any(np.abs(steps) != 1):
            raise ValidationError("Los pasos de un camino deben ser ±1", {"sites": list(self.sites)})

    @classmethod
    def from_steps(cls, steps: str, start: int = 0) -> "GeometricPath":
        """Construye el camino desde una cadena de pasos como "+-++"."""
        if any(s not in "+-" for s in steps):
            raise ValidationError("Cadena de pasos inválida", {"steps": steps})
        moves = np.array([1 if s == "+" else -1 for s in steps], dtype=np.int64)
        sites = start + np.concatenate([[0], np.cumsum(moves)])
        return cls(tuple(int(z) for z in sites))

    @property
    def length(self) -> int:
        return len(self.sites) - 1

    @property
    def end(self) -> int:
        return self.sites[-1]

    @property
    def steps(self) -> str:
        return "".join("+" if b > a else "-" for a, b in zip(self.sites, self.sites[1:]))


@dataclass(frozen=True)
class PathContribution:
    """log U(t, y) de un camino y su integral del símplex."""
    path: GeometricPath
    t: float
    log_value: float
    log_simplex: float

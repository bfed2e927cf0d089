"""domain/entities/potential_field.py"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Union

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import OutOfWindowError, ValidationError
from pam_localisation.domain.entities.regime_profile import RegimeProfile


@dataclass(frozen=True, eq=False)
class PotentialField:
    """
    Potencial de Pareto duplicado en la ventana simétrica [-L, L].

    `xi` tiene longitud 2L+1 y xi[z + L] = xi(z). `dup` tiene longitud L+1 y
    dup[n] indica n en D (dup[0] siempre verdadero). Los arreglos son de
    solo lectura.
    """
    alpha: float
    window: int
    seed: Optional[int]
    profile: Optional[RegimeProfile]
    xi: np.ndarray
    dup: np.ndarray

    def __post_init__(self):
        L = int(self.window)
        if L < 0:
            raise ValidationError("La ventana debe ser no negativa", {"window": L})
        if self.xi.shape != (2 * L + 1,) or self.dup.shape != (L + 1,):
            raise ValidationError("Dimensiones inconsistentes del campo",
                                  {"window": L, "xi": self.xi.shape, "dup": self.dup.shape})
        if not self.dup[0]:
            raise ValidationError("El sitio 0 pertenece a D por convención")
        if not np.all(np.isfinite(self.xi)):
            raise ValidationError("El potencial debe ser finito")
        if self.profile is not None and np.any(self.xi < 1.0):
            raise ValidationError("El potencial de Pareto debe ser >= 1")
        pos, neg = self.xi[L:], self.xi[L::-1]
        if np.any(pos[self.dup] != neg[self.dup]):
            raise ValidationError("xi(-n) debe ser igual a xi(n) en D")
        self.xi.setflags(write=False)
        self.dup.setflags(write=False)

    @classmethod
    def from_values(cls, xi, dup=None, alpha: float = 3.0, seed: Optional[int] = None,
                    profile: Optional[RegimeProfile] = None) -> "PotentialField":
        """
        Construye un campo a partir de valores explícitos (campos sintéticos).

        Si no se indica `dup`, D es el conjunto de n con xi(-n) == xi(n).

        Args:
            xi: Valores en [-L, L]
            dup: Máscara opcional de D en [0, L]
            alpha: Índice de cola asociado
            seed: Semilla (opcional)
            profile: Perfil (opcional)

        Returns:
            Campo inmutable
        """
        xi = np.array(xi, dtype=float)
        if xi.ndim != 1 or xi.size % 2 == 0:
            raise ValidationError("xi debe tener longitud impar 2L+1", {"size": int(xi.size)})
        L = xi.size // 2
        if dup is None:
            dup = xi[L:] == xi[L::-1]
        dup = np.array(dup, dtype=bool)
        return cls(alpha=float(alpha), window=L, seed=seed, profile=profile, xi=xi, dup=dup)

    @property
    def L(self) -> int:
        return int(self.window)

    @cached_property
    def xi_positive(self) -> np.ndarray:
        """xi(n) para n = 0..L."""
        return self.xi[self.L:]

    @cached_property
    def xi_negative(self) -> np.ndarray:
        """xi(-n) para n = 0..L."""
        return self.xi[self.L::-1]

    @cached_property
    def nondup(self) -> np.ndarray:
        """Máscara de E = [0, L] \\ D."""
        return ~self.dup

    @cached_property
    def nondup_cumcount(self) -> np.ndarray:
        """cumcount[n] = |E ∩ [1, n]|."""
        return np.cumsum(self.nondup)

    @cached_property
    def xi_max(self) -> float:
        return float(self.xi.max())

    def xi_at(self, z: Union[int, np.ndarray]) -> Union[float, np.ndarray]:
        """
        Valor del potencial en el sitio z (o arreglo de sitios).

        Raises:
            OutOfWindowError: Si algún sitio está fuera de la ventana
        """
        arr = np.asarray(z)
        if np.any(np.abs(arr) > self.L):
            bad = int(arr.flat[np.argmax(np.abs(arr))])
            raise OutOfWindowError(bad, self.L)
        values = self.xi[arr + self.L]
        return float(values) if np.ndim(z) == 0 else values

    def is_dup(self, n: int) -> bool:
        """Verdadero si |n| pertenece a D."""
        n = abs(int(n))
        if n > self.L:
            raise OutOfWindowError(n, self.L)
        return bool(self.dup[n])

    def restrict(self, window: int) -> "PotentialField":
        """
        Restringe el campo a la ventana [-window, window].

        Raises:
            OutOfWindowError: Si window supera la ventana del campo
        """
        if window > self.L:
            raise OutOfWindowError(window, self.L)
        lo, hi = self.L - window, self.L + window + 1
        return PotentialField(alpha=self.alpha, window=window, seed=self.seed, profile=self.profile,
                              xi=self.xi[lo:hi].copy(), dup=self.dup[:window + 1].copy())

    def is_symmetric(self, window: Optional[int] = None) -> bool:
        """Verdadero si xi(z) == xi(-z) en toda la ventana indicada."""
        w = self.L if window is None else window
        return bool(np.array_equal(self.xi_positive[:w + 1], self.xi_negative[:w + 1]))

    def dump(self, path) -> None:
        """Escribe el campo en JSONL (ver FieldRepository)."""
        from pam_localisation.infrastructure.repositories.field_repository import FieldRepository

        FieldRepository().save(self, path)

    @classmethod
    def load(cls, path) -> "PotentialField":
        """Lee un campo escrito con dump."""
        from pam_localisation.infrastructure.repositories.field_repository import FieldRepository

        return FieldRepository().find(path)

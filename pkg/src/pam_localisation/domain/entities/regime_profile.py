"""domain/entities/regime_profile.py"""

from enum import Enum
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from pam_localisation.common.exceptions.domain_exceptions import UnsupportedParameterError


class RegimeKind(str, Enum):
    """Régimen de duplicación del perfil."""
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"
    CUSTOM = "custom"


class ProfileFamily(str, Enum):
    """Familia funcional de q(n)."""
    CRITICAL = "critical"
    POWER = "power"
    LOG = "log"
    CONSTANT = "constant"


ArrayLike = Union[int, float, np.ndarray]


def critical_exponent(alpha: float) -> float:
    """Exponente de q(n) en el régimen crítico: 1 - 2/alpha."""
    return 1.0 - 2.0 / alpha


class RegimeProfile(BaseModel):
    """
    Perfil de probabilidad de no duplicación q(n) = 1 - p(n).

    El perfil es declarativo (familia y parámetros) para que pueda
    serializarse y enviarse a procesos de trabajo.
    """
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., ge=2.0)
    kind: RegimeKind
    family: ProfileFamily
    beta: Optional[float] = Field(default=None, gt=0.0)
    exponent: Optional[float] = Field(default=None, ge=0.0)
    scale: float = Field(default=1.0, gt=0.0)
    constant: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    n0: int = Field(default=8, ge=1)

    @model_validator(mode="after")
    def _check_family_parameters(self) -> "RegimeProfile":
        if self.family == ProfileFamily.CRITICAL and self.beta is None:
            raise ValueError("la familia crítica requiere beta")
        if self.family in (ProfileFamily.POWER, ProfileFamily.LOG) and self.exponent is None:
            raise ValueError(f"la familia {self.family.value} requiere exponent")
        if self.family == ProfileFamily.CONSTANT and self.constant is None:
            raise ValueError("la familia constante requiere constant")
        return self

    @classmethod
    def builtin(cls, kind: Union[RegimeKind, str], alpha: float, beta: float = 1.0) -> "RegimeProfile":
        """
        Construye el perfil incorporado de un régimen.

        Crítico: q(n) = min(1, (2 beta/alpha) n^{2/alpha-1}) si alpha > 2 y
        min(1, beta/log(n+2)) si alpha = 2. Subcrítico: ley de potencia con
        exponente eps_c + 0.85 (1 - eps_c). Supercrítico: ley de potencia con
        exponente 0.3 eps_c si alpha > 2 y la familia logarítmica
        min(1, log(n+2)^{-1/2}) si alpha = 2.

        Args:
            kind: Régimen
            alpha: Índice de cola de Pareto (>= 2)
            beta: Constante crítica

        Returns:
            Perfil incorporado

        Raises:
            UnsupportedParameterError: Si alpha < 2 o el régimen es custom
        """
        kind = RegimeKind(kind)
        if alpha < 2:
            raise UnsupportedParameterError("alpha", alpha)
        eps_c = critical_exponent(alpha)
        if kind == RegimeKind.CRITICAL:
            return cls(alpha=alpha, kind=kind, family=ProfileFamily.CRITICAL, beta=beta)
        if kind == RegimeKind.SUBCRITICAL:
            return cls(alpha=alpha, kind=kind, family=ProfileFamily.POWER,
                       exponent=eps_c + 0.85 * (1.0 - eps_c))
        if kind == RegimeKind.SUPERCRITICAL:
            if alpha == 2:
                return cls(alpha=alpha, kind=kind, family=ProfileFamily.LOG, exponent=0.5)
            return cls(alpha=alpha, kind=kind, family=ProfileFamily.POWER, exponent=0.3 * eps_c)
        raise UnsupportedParameterError("kind", kind.value, "El régimen custom no tiene perfil incorporado")

    @classmethod
    def power_law(cls, alpha: float, exponent: float, scale: float = 1.0) -> "RegimeProfile":
        """Perfil personalizado q(n) = min(1, scale n^{-exponent})."""
        if alpha < 2:
            raise UnsupportedParameterError("alpha", alpha)
        return cls(alpha=alpha, kind=RegimeKind.CUSTOM, family=ProfileFamily.POWER,
                   exponent=exponent, scale=scale)

    @classmethod
    def constant_q(cls, alpha: float, q: float) -> "RegimeProfile":
        """Perfil personalizado con q constante (q=0 duplica todo, q=1 nada)."""
        if alpha < 2:
            raise UnsupportedParameterError("alpha", alpha)
        return cls(alpha=alpha, kind=RegimeKind.CUSTOM, family=ProfileFamily.CONSTANT, constant=q)

    def q(self, n: ArrayLike) -> ArrayLike:
        """
        Probabilidad de no duplicación en los sitios n >= 1, recortada a [0, 1]
        y acotada por q(n0) a partir de n0.

        Args:
            n: Índice o arreglo de índices

        Returns:
            q(n) con la misma forma que n
        """
        x = np.asarray(n, dtype=float)
        raw = self._raw_q(x)
        ceiling = float(np.clip(self._raw_q(np.asarray(float(self.n0))), 0.0, 1.0))
        result = np.clip(np.where(x >= self.n0, np.minimum(raw, ceiling), raw), 0.0, 1.0)
        return float(result) if np.ndim(n) == 0 else result

    def _raw_q(self, x: np.ndarray) -> np.ndarray:
        if self.family == ProfileFamily.CONSTANT:
            raw = np.full_like(x, self.constant)
        elif self.family == ProfileFamily.CRITICAL:
            if self.alpha > 2:
                raw = (2.0 * self.beta / self.alpha) * np.power(x, 2.0 / self.alpha - 1.0)
            else:
                raw = self.beta / np.log(x + 2.0)
        elif self.family == ProfileFamily.POWER:
            raw = self.scale * np.power(x, -self.exponent)
        else:
            raw = self.scale * np.power(np.log(x + 2.0), -self.exponent)
        return raw

    def p(self, n: ArrayLike) -> ArrayLike:
        """Probabilidad de duplicación p(n) = 1 - q(n)."""
        q = self.q(n)
        return 1.0 - q

    def describe(self) -> str:
        """Descripción corta para logs y encabezados."""
        params = {k: v for k, v in self.model_dump(mode="json").items()
                  if v is not None and k not in ("alpha", "kind", "family", "n0")}
        return f"{self.kind.value}/{self.family.value}(alpha={self.alpha}, {params})"

"""interfaces/models/config_models.py"""

import math
import os
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from pam_localisation.common.value_objects.scales import Scales
from pam_localisation.domain.entities.regime_profile import ProfileFamily, RegimeKind, RegimeProfile


class ProfileConfig(BaseModel):
    """Perfil de duplicación: incorporado por régimen o personalizado por familia."""
    kind: RegimeKind = RegimeKind.CRITICAL
    family: Optional[ProfileFamily] = None
    beta: float = Field(default=1.0, gt=0.0)
    exponent: Optional[float] = Field(default=None, ge=0.0)
    scale: float = Field(default=1.0, gt=0.0)
    constant: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_custom(self) -> "ProfileConfig":
        if self.kind == RegimeKind.CUSTOM and self.family is None:
            raise ValueError("un perfil custom requiere family")
        return self

    def build(self, alpha: float) -> RegimeProfile:
        """
        Construye el RegimeProfile para un alpha dado.

        Un exponente explícito con régimen no custom sustituye al del perfil
        incorporado conservando el régimen declarado.
        """
        if self.kind != RegimeKind.CUSTOM:
            profile = RegimeProfile.builtin(self.kind, alpha, self.beta)
            if self.exponent is not None and profile.family == ProfileFamily.POWER:
                return profile.model_copy(update={"exponent": self.exponent, "scale": self.scale})
            return profile
        return RegimeProfile(
            alpha=alpha, kind=RegimeKind.CUSTOM, family=self.family, beta=self.beta,
            exponent=self.exponent, scale=self.scale, constant=self.constant,
        )


class WindowPolicy(BaseModel):
    """
    Política de ventanas.

    El radio de búsqueda por defecto es ceil(search_factor g_t r_t); la
    ventana del campo es el doble del radio en el t mayor (para la
    verificación de estabilidad). La del solver, una vez localizado Z1, es
    ceil(solve_scale R_t) + 1 con R_t = |Z1|(1 + f_t), acotada por el radio.
    """
    search_factor: float = Field(default=4.0, gt=0.0)
    solve_scale: float = Field(default=1.0, gt=0.0)
    radius: Optional[int] = Field(default=None, ge=1)
    L: Optional[int] = Field(default=None, ge=1)
    L_solve: Optional[int] = Field(default=None, ge=1)
    stability_check: bool = True

    def search_radius(self, scales: Scales) -> int:
        if self.radius is not None:
            return self.radius
        return int(math.ceil(self.search_factor * scales.g_t * scales.r_t))

    def field_window(self, radius: int) -> int:
        if self.L is not None:
            return self.L
        return 2 * radius if self.stability_check else radius

    def solve_window(self, radius: int, reach: Optional[float] = None) -> int:
        if self.L_solve is not None:
            return self.L_solve
        if reach is None:
            return radius
        return min(radius, int(math.ceil(self.solve_scale * reach)) + 1)


class SolverSettings(BaseModel):
    """Integrador y tolerancias del solver."""
    method: str = "bdf"
    tolerance: float = Field(default=1e-8, gt=0.0)
    leak_threshold: float = Field(default=1e-6, gt=0.0)


class SignificanceLevels(BaseModel):
    """Umbrales de decisión de las suites."""
    trend: float = Field(default=0.05, gt=0.0, lt=1.0)
    goodness_of_fit: float = Field(default=0.001, gt=0.0, lt=1.0)
    ks_threshold: float = Field(default=0.15, gt=0.0, le=1.0)
    clt_ks: float = Field(default=0.05, gt=0.0, le=1.0)
    mass_threshold: float = Field(default=0.9, gt=0.0, le=1.0)
    confidence: float = Field(default=0.95, gt=0.0, lt=1.0)


class CltParams(BaseModel):
    """
    Parámetros de la suite del TCL condicional.

    Sin theta_over_xi se usa 1e-2 con alpha = 2 y 1e-3 con alpha > 2.
    """
    theta_over_xi: Optional[float] = Field(default=None, gt=0.0)
    k_size: int = Field(default=10_000, ge=1)
    n_sums: int = Field(default=2000, ge=1)


class PointProcessParams(BaseModel):
    """Parámetros de la suite del proceso puntual."""
    s: float = Field(default=1e4, gt=1.0)
    n_fields: int = Field(default=500, ge=1)
    boxes: Optional[List[List[float]]] = None
    density_samples: int = Field(default=100_000, ge=1)
    grid_bins: int = Field(default=20, ge=2)


class ExperimentConfig(BaseModel):
    """Configuración completa de un experimento."""
    alpha: float = Field(default=3.0, ge=2.0)
    profile: ProfileConfig = Field(default_factory=ProfileConfig)
    t_grid: List[float] = Field(default_factory=lambda: [1e3, 1e4, 1e5])
    replicates: int = Field(default=200, ge=1)
    base_seed: int = Field(default=0, ge=0)
    window: WindowPolicy = Field(default_factory=WindowPolicy)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    significance: SignificanceLevels = Field(default_factory=SignificanceLevels)
    reference_samples: int = Field(default=20_000, ge=1)
    clt: CltParams = Field(default_factory=CltParams)
    point_process: PointProcessParams = Field(default_factory=PointProcessParams)
    out: str = "results"
    threads: Optional[int] = Field(default=None, ge=1)
    top_k: int = Field(default=0, ge=0)
    emit_plotdata: bool = False

    @field_validator("t_grid")
    @classmethod
    def _check_grid(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("t_grid no puede estar vacía")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("t_grid debe ser estrictamente creciente")
        if value[0] <= 0:
            raise ValueError("los tiempos de t_grid deben ser positivos")
        return value

    @property
    def regime(self) -> RegimeKind:
        return self.profile.kind

    @property
    def workers(self) -> int:
        return self.threads or os.cpu_count() or 1

    def build_profile(self) -> RegimeProfile:
        return self.profile.build(self.alpha)


class CliConfig(BaseModel):
    """Invocación de la CLI ya analizada."""
    subcommand: str
    config_path: Optional[str] = None
    suite: Optional[str] = None
    log_level: str = "INFO"
    overrides: dict = Field(default_factory=dict)
    field_path: Optional[str] = None
    max_len: Optional[int] = Field(default=None, ge=0)
    target: int = 0
    full: bool = False

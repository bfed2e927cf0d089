"""domain/model/counting.py"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import (
    DomainError,
    InconclusiveClassificationError,
    ValidationError,
)
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.entities.regime_profile import RegimeKind, RegimeProfile


_CHUNK = 1 << 20
DEFAULT_PROBES = (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6)
# Pendiente log-log de eta/kappa por debajo de la cual el perfil es crítico
CRITICAL_SLOPE = 0.02


@lru_cache(maxsize=8192)
def _chunk_sum(profile: RegimeProfile, index: int) -> float:
    """Suma de q sobre el bloque completo index (sitios index*_CHUNK+1 .. (index+1)*_CHUNK)."""
    start = index * _CHUNK + 1
    return math.fsum(profile.q(np.arange(start, start + _CHUNK)))


def _eta_int(profile: RegimeProfile, n: int) -> float:
    full, rest = divmod(n, _CHUNK)
    parts = [_chunk_sum(profile, k) for k in range(full)]
    if rest:
        start = full * _CHUNK + 1
        parts.append(math.fsum(profile.q(np.arange(start, start + rest))))
    return math.fsum(parts)


def eta(profile: RegimeProfile, n: float) -> float:
    """
    eta(n) = sum_{z=1}^{n} q(z), número esperado de sitios no duplicados en [1, n].

    Para n real se usa q(x) = q(ceil(x)): eta(x) = eta(floor x) + (x - floor x) q(ceil x).

    Args:
        profile: Perfil de duplicación
        n: Argumento (>= 0)

    Returns:
        eta(n)
    """
    if n < 0:
        raise DomainError("eta requiere n >= 0", {"n": n})
    m = int(math.floor(n))
    value = _eta_int(profile, m)
    frac = float(n) - m
    if frac > 0:
        value += frac * profile.q(m + 1)
    return value


def kappa(alpha: float, n: float) -> float:
    """
    Escala crítica: n^{2/alpha} si alpha > 2 y n/log n si alpha = 2.

    Raises:
        DomainError: Si alpha = 2 y n < 2
    """
    if alpha > 2:
        if n < 0:
            raise DomainError("kappa requiere n >= 0", {"n": n})
        return float(n) ** (2.0 / alpha)
    if n < 2:
        raise DomainError("kappa con alpha=2 requiere n >= 2", {"n": n})
    return float(n) / math.log(n)


@dataclass(frozen=True)
class RegimeClassification:
    """Resultado de clasificar un perfil comparando eta con kappa."""
    kind: RegimeKind
    beta_hat: Optional[float]
    probes: List[int] = field(default_factory=list)
    ratios: List[float] = field(default_factory=list)
    slopes: List[float] = field(default_factory=list)


def classify_regime(profile: RegimeProfile, n_probe: Sequence[int] = DEFAULT_PROBES) -> RegimeClassification:
    """
    Clasifica el régimen por el comportamiento de eta(n)/kappa(n) en las sondas.

    Se usa la pendiente log-log del cociente entre sondas consecutivas: en la
    última pareja |pendiente| < CRITICAL_SLOPE indica régimen crítico con
    beta estimado igual al último cociente; pendiente negativa subcrítico y
    positiva supercrítico. eta idénticamente nula es subcrítico.

    Args:
        profile: Perfil a clasificar
        n_probe: Sondas crecientes (al menos 3)

    Returns:
        Clasificación con cocientes y pendientes

    Raises:
        ValidationError: Si las sondas no son válidas
        InconclusiveClassificationError: Si la tendencia cambia de signo
    """
    probes = [int(n) for n in n_probe]
    if len(probes) < 3 or any(b <= a for a, b in zip(probes, probes[1:])) or probes[0] < 2:
        raise ValidationError("Se requieren al menos 3 sondas crecientes >= 2", {"n_probe": probes})

    etas = [eta(profile, n) for n in probes]
    if all(e == 0.0 for e in etas):
        return RegimeClassification(RegimeKind.SUBCRITICAL, None, probes, [0.0] * len(probes), [])
    if any(e == 0.0 for e in etas):
        raise InconclusiveClassificationError("eta nula solo en parte de las sondas", {"eta": etas})

    ratios = [e / kappa(profile.alpha, n) for e, n in zip(etas, probes)]
    slopes = [
        math.log(r2 / r1) / math.log(n2 / n1)
        for (r1, n1), (r2, n2) in zip(zip(ratios, probes), zip(ratios[1:], probes[1:]))
    ]
    if any(s > CRITICAL_SLOPE for s in slopes) and any(s < -CRITICAL_SLOPE for s in slopes):
        logger.error(f"Tendencia no monótona de eta/kappa: pendientes={slopes}")
        raise InconclusiveClassificationError("Tendencia no monótona de eta/kappa",
                                              {"ratios": ratios, "slopes": slopes})

    last = slopes[-1]
    if abs(last) < CRITICAL_SLOPE:
        kind, beta_hat = RegimeKind.CRITICAL, ratios[-1]
    elif last < 0:
        kind, beta_hat = RegimeKind.SUBCRITICAL, None
    else:
        kind, beta_hat = RegimeKind.SUPERCRITICAL, None
    logger.debug(f"Perfil {profile.describe()} clasificado como {kind.value} (pendientes={slopes})")
    return RegimeClassification(kind, beta_hat, probes, ratios, slopes)


def resolve_regime(profile: RegimeProfile, declared: Optional[RegimeKind] = None) -> RegimeKind:
    """
    Régimen efectivo: el declarado, el del perfil incorporado o, para perfiles
    custom, el de classify_regime.
    """
    if declared is not None and RegimeKind(declared) != RegimeKind.CUSTOM:
        return RegimeKind(declared)
    if profile.kind != RegimeKind.CUSTOM:
        return profile.kind
    return classify_regime(profile).kind

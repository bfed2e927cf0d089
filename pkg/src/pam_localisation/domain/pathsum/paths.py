"""domain/pathsum/paths.py"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence

import numpy as np
from scipy import stats
from scipy.special import logsumexp

from pam_localisation.common.exceptions.domain_exceptions import (
    EnumerationCapError,
    OutOfWindowError,
    ValidationError,
)
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.entities.geometric_path import GeometricPath, PathContribution
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.pathsum.simplex import simplex_integral


DEFAULT_PATH_CAP = 10 ** 7


@dataclass(frozen=True)
class PathSumResult:
    """Suma truncada de caminos hacia un sitio y cota de la masa omitida."""
    t: float
    target: int
    max_len: int
    log_u_lower: float
    log_tail_bound: float
    n_paths: int

    @property
    def tail_bound(self) -> float:
        return math.exp(self.log_tail_bound) if self.log_tail_bound < 709.0 else math.inf


def path_contribution(field: PotentialField, t: float, path: GeometricPath) -> PathContribution:
    """
    log U(t, y) = -2t + log I_l(t; xi(y_0), ..., xi(y_l)).

    Raises:
        OutOfWindowError: Si el camino sale de la ventana del campo
    """
    values = field.xi_at(np.asarray(path.sites, dtype=np.int64))
    log_simplex = simplex_integral(t, np.atleast_1d(values))
    return PathContribution(path=path, t=float(t), log_value=-2.0 * t + log_simplex, log_simplex=log_simplex)


def _lengths(target: int, max_len: int) -> List[int]:
    return list(range(abs(target), max_len + 1, 2))


def count_paths(target: int, max_len: int, window: int) -> int:
    """Número de caminos 0 -> target de longitud <= max_len (misma paridad) dentro de [-window, window]."""
    counts = np.zeros(2 * window + 1)
    counts[window] = 1.0
    total = 1.0 if target == 0 else 0.0
    for length in range(1, max_len + 1):
        moved = np.zeros_like(counts)
        moved[1:] += counts[:-1]
        moved[:-1] += counts[1:]
        counts = moved
        if (length - abs(target)) % 2 == 0 and length >= abs(target):
            total += counts[target + window]
    return int(total)


def _walk(prefix: List[int], target: int, length: int, window: int) -> Iterator[GeometricPath]:
    """Caminos que extienden prefix hasta tener `length` pasos y terminan en target."""
    stack = [list(prefix)]
    while stack:
        sites = stack.pop()
        remaining = length - (len(sites) - 1)
        here = sites[-1]
        if remaining == 0:
            if here == target:
                yield GeometricPath(tuple(sites))
            continue
        # Orden inverso en la pila para emitir primero el paso negativo
        for step in (1, -1):
            nxt = here + step
            if abs(nxt) <= window and abs(nxt - target) <= remaining - 1:
                stack.append(sites + [nxt])


def enumerate_paths(target: int, max_len: int, window: int,
                    first_step: Optional[int] = None) -> Iterator[GeometricPath]:
    """
    Genera los caminos 0 -> target de longitud <= max_len dentro de la ventana.

    Las longitudes comparten paridad con |target| y se recorren en orden
    creciente. `first_step` restringe a una rama (+1 o -1; 0 para el camino
    vacío).
    """
    if abs(target) > window:
        raise OutOfWindowError(target, window)
    for length in _lengths(target, max_len):
        if length == 0:
            if first_step in (None, 0):
                yield GeometricPath((0,))
            continue
        for step in (-1, 1):
            if first_step not in (None, step) or abs(step) > window:
                continue
            yield from _walk([0, step], target, length, window)


def _branch_log_sum(field: PotentialField, t: float, target: int, max_len: int, window: int,
                    first_step: int) -> float:
    logs = [path_contribution(field, t, p).log_value
            for p in enumerate_paths(target, max_len, window, first_step)]
    return float(logsumexp(logs)) if logs else -math.inf


def tail_log_bound(t: float, xi_max: float, max_len: int) -> float:
    """log de e^{t xi_max} P(Poisson(2t) > max_len), cota de los caminos con más saltos."""
    return t * xi_max + float(stats.poisson.logsf(max_len, 2.0 * t))


def truncated_path_sum(field: PotentialField, t: float, target_z: int, max_len: int,
                       window: Optional[int] = None, cap: int = DEFAULT_PATH_CAP,
                       threads: int = 1) -> PathSumResult:
    """
    Cota inferior de log u(t, target) sumando todos los caminos de longitud <= max_len.

    Los caminos quedan confinados a la ventana (paseo absorbido en el borde).
    Las ramas por primer paso se reducen con log-sum-exp en orden fijo
    (camino vacío, -1, +1), de modo que el resultado no depende de `threads`.

    Args:
        field: Campo de potencial
        t: Tiempo (> 0)
        target_z: Sitio destino
        max_len: Longitud máxima (>= |target_z|)
        window: Semiancho de confinamiento (por defecto la ventana del campo)
        cap: Máximo de caminos permitidos
        threads: Hilos para las ramas

    Returns:
        Suma truncada y cota de la cola

    Raises:
        ValidationError: Si max_len < |target_z| o t <= 0
        EnumerationCapError: Si el número de caminos supera cap
    """
    if not t > 0:
        raise ValidationError("truncated_path_sum requiere t > 0", {"t": t})
    if max_len < abs(target_z):
        raise ValidationError("max_len debe ser >= |target_z|", {"max_len": max_len, "target_z": target_z})
    window = field.L if window is None else int(window)
    if window > field.L:
        raise OutOfWindowError(window, field.L)
    if abs(target_z) > window:
        raise OutOfWindowError(target_z, window)

    total = count_paths(target_z, max_len, window)
    if total > cap:
        logger.error(f"Enumeración de {total} caminos supera el límite {cap}")
        raise EnumerationCapError(total, cap)
    logger.debug(f"Enumerando {total} caminos 0 -> {target_z} (max_len={max_len}, t={t})")

    branches: Sequence[int] = (0, -1, 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda b: _branch_log_sum(field, t, target_z, max_len, window, b), branches))
    else:
        parts = [_branch_log_sum(field, t, target_z, max_len, window, b) for b in branches]

    restricted = field.restrict(window)
    return PathSumResult(
        t=float(t),
        target=int(target_z),
        max_len=int(max_len),
        log_u_lower=float(logsumexp(parts)),
        log_tail_bound=tail_log_bound(t, restricted.xi_max, max_len),
        n_paths=total,
    )

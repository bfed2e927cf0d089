"""domain/model/rng.py"""

from enum import IntEnum

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import ValidationError


# Uniformes por bloque de contador; fijo para que extender la ventana sea bit-exacto
BLOCK_SIZE = 4096
_MASK64 = (1 << 64) - 1


class Stream(IntEnum):
    """Flujos independientes de uniformes por sitio."""
    BASE = 0
    MIRROR = 1
    DUP = 2


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if seed < 0 or seed > _MASK64:
        raise ValidationError("La semilla debe ser un entero de 64 bits sin signo", {"seed": seed})
    return seed


def _block(seed: int, stream: Stream, negative: bool, block: int) -> np.ndarray:
    """Uniformes del bloque `block` para la clave (seed, stream, signo)."""
    lane = int(stream) * 2 + int(negative)
    bitgen = np.random.Philox(key=seed | (lane << 64), counter=int(block) << 192)
    return np.random.Generator(bitgen).random(BLOCK_SIZE)


def site_uniforms(seed: int, stream: Stream, start: int, stop: int) -> np.ndarray:
    """
    Uniformes en [0, 1) para los sitios no negativos start..stop-1.

    El valor del sitio n depende solo de (seed, stream, n): se genera con un
    Philox cuya clave codifica semilla y flujo y cuyo contador codifica el
    bloque n // BLOCK_SIZE.

    Args:
        seed: Semilla de 64 bits
        stream: Flujo (Base, Mirror, Dup)
        start: Primer sitio (>= 0)
        stop: Sitio final exclusivo

    Returns:
        Arreglo de longitud stop - start
    """
    seed = _check_seed(seed)
    if start < 0 or stop < start:
        raise ValidationError("Rango de sitios inválido", {"start": start, "stop": stop})
    if stop == start:
        return np.empty(0)
    first, last = start // BLOCK_SIZE, (stop - 1) // BLOCK_SIZE
    values = np.concatenate([_block(seed, Stream(stream), False, b) for b in range(first, last + 1)])
    offset = first * BLOCK_SIZE
    return values[start - offset:stop - offset]


def site_uniform(seed: int, site: int, stream: Stream) -> float:
    """
    Uniforme determinista para (seed, site, stream), sin estado secuencial.

    Los sitios negativos usan un carril propio del generador.

    Args:
        seed: Semilla de 64 bits
        site: Sitio entero
        stream: Flujo

    Returns:
        Valor en [0, 1)
    """
    seed = _check_seed(seed)
    site = int(site)
    negative = site < 0
    index = -site - 1 if negative else site
    block, offset = divmod(index, BLOCK_SIZE)
    return float(_block(seed, Stream(stream), negative, block)[offset])

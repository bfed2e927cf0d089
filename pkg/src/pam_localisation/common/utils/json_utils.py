"""common/utils/json_utils.py"""

import json
import math

from typing import Any, Dict

import numpy as np
from flatten_json import flatten

from pam_localisation.common.utils.log import logger


_SENTINELS = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def sanitize(obj: Any) -> Any:
    """
    Convierte recursivamente un objeto a tipos JSON estándar.

    Los flotantes no finitos se reemplazan por los centinelas "inf", "-inf"
    y "nan"; los escalares y arreglos de numpy pasan a tipos nativos.

    Args:
        obj: Objeto a convertir

    Returns:
        Objeto serializable sin valores no finitos
    """
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [sanitize(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return obj


def restore_float(value: Any) -> Any:
    """
    Devuelve el flotante correspondiente a un centinela, o el valor sin cambios.

    Args:
        value: Valor leído de JSON

    Returns:
        Flotante no finito si el valor es un centinela
    """
    if isinstance(value, str) and value in _SENTINELS:
        return _SENTINELS[value]
    return value


def to_json(obj: Any, indent: int = None) -> str:
    """
    Convierte un objeto a string JSON estándar (sin NaN/Infinity literales).

    Args:
        obj: Objeto a convertir
        indent: Indentación opcional

    Returns:
        String JSON

    Raises:
        ValueError: Si no se puede convertir
    """
    try:
        return json.dumps(sanitize(obj), default=str, allow_nan=False,
                          indent=indent, sort_keys=indent is not None)
    except Exception as e:
        logger.error(f"Error al convertir a JSON: {e}")
        raise ValueError(f"No se pudo convertir a JSON: {e}")


def from_json(json_str: str) -> Any:
    """
    Convierte un string JSON a objeto Python.

    Args:
        json_str: String JSON a convertir

    Returns:
        Objeto Python

    Raises:
        ValueError: Si no se puede convertir
    """
    try:
        return json.loads(json_str)
    except json.JSONDecodeError as e:
        logger.error(f"Error al decodificar JSON: {e}")
        raise ValueError(f"JSON inválido: {e}")


def flatten_json_obj(data: Dict, delimiter: str = '.') -> Dict:
    """
    Aplana un objeto JSON anidado.

    Args:
        data: Datos a aplanar
        delimiter: Delimitador para las claves

    Returns:
        Objeto aplanado

    Raises:
        ValueError: Si no se puede aplanar
    """
    try:
        return flatten(sanitize(data), delimiter)
    except Exception as e:
        logger.error(f"Error al aplanar JSON: {e}")
        raise ValueError(f"No se pudo aplanar JSON: {e}")


def deep_merge(dict1: Dict, dict2: Dict) -> Dict:
    """
    Combina dos diccionarios de manera recursiva.

    Args:
        dict1: Primer diccionario
        dict2: Segundo diccionario (sus valores tienen prioridad)

    Returns:
        Diccionario combinado
    """
    result = dict1.copy()

    for key, value in dict2.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value

    return result


def drop_none(data: Dict) -> Dict:
    """
    Elimina recursivamente las claves con valor None.

    Args:
        data: Diccionario de entrada

    Returns:
        Diccionario sin valores None
    """
    result = {}
    for key, value in data.items():
        if value is None:
            continue
        result[key] = drop_none(value) if isinstance(value, dict) else value
    return result

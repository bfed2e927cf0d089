"""common/utils/jmespath.py"""

from typing import Any, Dict, List, Optional

import jmespath

from pam_localisation.common.utils.json_utils import restore_float


def search(expression: str, data: Any, default: Any = None) -> Any:
    """
    Evalúa una expresión JMESPath devolviendo un valor por defecto si no hay resultado.

    Args:
        expression: Expresión JMESPath
        data: Documento sobre el que buscar
        default: Valor si el resultado es None

    Returns:
        Resultado de la búsqueda
    """
    result = jmespath.search(expression, data)
    return default if result is None else result


def suite_section(config: Dict[str, Any], suite: str) -> Dict[str, Any]:
    """
    Extrae la sección de configuración de una suite ("suites.<nombre>").

    Args:
        config: Documento de configuración completo
        suite: Nombre de la suite

    Returns:
        Sección de la suite o diccionario vacío
    """
    return search(f'suites."{suite}"', config, {})


def point_values(records: List[Dict[str, Any]], t: float, field: str) -> List[Any]:
    """
    Extrae un campo de los puntos temporales con tiempo t de réplicas exitosas.

    Args:
        records: Réplicas serializadas (dicts)
        t: Tiempo buscado
        field: Nombre del campo del punto temporal

    Returns:
        Lista de valores (centinelas convertidos a flotantes)
    """
    expression = f"[?status=='ok'].points[] | [?t==`{float(t)!r}`].{field}"
    return [restore_float(v) for v in search(expression, records, [])]


def failed_seeds(records: List[Dict[str, Any]]) -> List[int]:
    """Semillas de las réplicas fallidas."""
    return search("[?status=='failed'].seed", records, [])


def first_or_none(expression: str, data: Any) -> Optional[Any]:
    """Primer elemento de una proyección, o None."""
    result = search(expression, data, [])
    return result[0] if result else None


def point_rows(records: List[Dict[str, Any]], t: float, fields: List[str]) -> List[List[Any]]:
    """
    Extrae varias columnas alineadas de los puntos temporales con tiempo t.

    Args:
        records: Réplicas serializadas (dicts)
        t: Tiempo buscado
        fields: Campos (admiten rutas anidadas como events.e1)

    Returns:
        Una fila por réplica exitosa
    """
    columns = ", ".join(fields)
    expression = f"[?status=='ok'].points[] | [?t==`{float(t)!r}`].[{columns}]"
    return [[restore_float(v) for v in row] for row in search(expression, records, [])]


def point_failures(records: List[Dict[str, Any]], t: float) -> List[Dict[str, Any]]:
    """Errores registrados en el tiempo t, de réplicas completas o parciales."""
    return search(f"[].failures[] | [?t==`{float(t)!r}`]", records, [])

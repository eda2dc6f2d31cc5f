"""
Acceso a la configuración de la app.

Los valores de ``settings.INTERSECTIONS`` se mezclan sobre los valores por
defecto, de modo que la librería funciona con cualquier settings de Django
e incluso sin settings configurados (p. ej. en procesos hijos).
"""

from pathlib import Path
from typing import Any, Dict

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS: Dict[str, Any] = {
    'SEARCH_LIMIT': 200000,
    'SEARCH_WORKERS': 4,
    'SEARCH_EXECUTOR': 'thread',
    'LEDGER_PATH': str(Path(__file__).resolve().parent / 'data' / 'bordism_ledger.json'),
    'MAX_LITERAL_TERMS': 1000000,
}


def get_setting(name: str) -> Any:
    """Devuelve un valor de configuración de la app.

    Args:
        name: Clave dentro de ``INTERSECTIONS``

    Returns:
        El valor configurado o el valor por defecto
    """
    if name not in DEFAULTS:
        raise KeyError(f"Configuración desconocida: {name}")
    try:
        overrides = getattr(settings, 'INTERSECTIONS', {})
    except ImproperlyConfigured:
        overrides = {}
    return overrides.get(name, DEFAULTS[name])

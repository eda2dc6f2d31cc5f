"""
Analizador de literales de multigrado.

Gramática::

    LITERAL := TERM ("," TERM)*
    TERM    := INT | INT "^" INT

``a^m`` significa m copias del grado a (multiplicidad), no la potencia a^m.
Cualquier otra cosa, espacios incluidos, es un error con posición.
"""

import re
from typing import List, Optional

from .conf import get_setting
from .invariants import Multidegree, canonicalize

_TERM = re.compile(r"([0-9]+)(?:\^([0-9]+))?")

# Por debajo del límite de conversión de int de CPython.
MAX_INT_DIGITS = 4000


class LiteralParseError(ValueError):
    """Literal fuera de la gramática; ``position`` es el índice del fallo (desde 0)."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} en la posición {position}: {text!r}")


def _to_int(text: str, match: re.Match, group: int) -> int:
    digits = match.group(group)
    if len(digits) > MAX_INT_DIGITS:
        raise LiteralParseError(
            f"Entero de más de {MAX_INT_DIGITS} cifras", text, match.start(group)
        )
    return int(digits)


def parse_multidegree(text: str, max_terms: Optional[int] = None) -> Multidegree:
    """Convierte un literal como ``3^150,7^89,15`` en un Multidegree.

    Args:
        text: Literal a analizar
        max_terms: Tope de grados tras expandir multiplicidades

    Raises:
        LiteralParseError: Si el texto no pertenece a la gramática
    """
    if max_terms is None:
        max_terms = get_setting('MAX_LITERAL_TERMS')
    degrees: List[int] = []
    position = 0
    while True:
        match = _TERM.match(text, position)
        if match is None:
            raise LiteralParseError("Se esperaba un entero", text, position)
        degree = _to_int(text, match, 1)
        if degree < 1:
            raise LiteralParseError("Los grados deben ser >= 1", text, match.start(1))
        count = 1
        if match.group(2) is not None:
            count = _to_int(text, match, 2)
            if count < 1:
                raise LiteralParseError("La multiplicidad debe ser >= 1", text, match.start(2))
        if len(degrees) + count > max_terms:
            raise LiteralParseError(
                f"El literal supera el máximo de {max_terms} grados", text, match.start()
            )
        degrees.extend([degree] * count)
        position = match.end()
        if position == len(text):
            break
        if text[position] != ",":
            raise LiteralParseError("Se esperaba ',' o fin de literal", text, position)
        position += 1
    return canonicalize(degrees)

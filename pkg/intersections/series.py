"""
Series formales truncadas en una variable x con coeficientes enteros exactos.

Es la base de cálculo de todas las clases características: cada serie guarda
explícitamente su precisión P (coeficientes de x^0 hasta x^P) y la
aritmética nunca lee ni escribe más allá de ese índice.

Los productos, potencias e inversas se delegan en ``sympy.polys.ring_series``
sobre el anillo ZZ[x]; allí la precisión es exclusiva, de ahí los ``P + 1``.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.ring_series import rs_mul, rs_pow, rs_series_inversion
from sympy.polys.rings import ring

logger = logging.getLogger(__name__)

_RING, _X = ring('x', ZZ)


class SeriesError(ValueError):
    """Error de aritmética de series truncadas."""


@dataclass(frozen=True)
class TruncSeries:
    """Serie truncada c_0 + c_1 x + ... + c_P x^P.

    ``modulus`` es 0 para coeficientes en ZZ y 2 tras ``reduce_mod2``.
    """

    coeffs: Tuple[int, ...]
    precision: int
    modulus: int = 0

    def __post_init__(self):
        if self.precision < 0:
            raise SeriesError(f"Precisión negativa: {self.precision}")
        if len(self.coeffs) != self.precision + 1:
            raise SeriesError(
                f"Se esperaban {self.precision + 1} coeficientes, hay {len(self.coeffs)}"
            )

    def __add__(self, other: 'TruncSeries') -> 'TruncSeries':
        return add(self, other)

    def __sub__(self, other: 'TruncSeries') -> 'TruncSeries':
        return add(self, neg(other))

    def __mul__(self, other: 'TruncSeries') -> 'TruncSeries':
        return mul(self, other)

    def __neg__(self) -> 'TruncSeries':
        return neg(self)

    def __pow__(self, e: int) -> 'TruncSeries':
        return int_pow(self, e)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}x")
            else:
                terms.append(f"{c}x^{i}")
        body = " + ".join(terms) if terms else "0"
        suffix = " (mod 2)" if self.modulus else ""
        return f"{body} + O(x^{self.precision + 1}){suffix}"


def from_coeffs(coeffs: Iterable[int], precision: int, modulus: int = 0) -> TruncSeries:
    """Construye una serie rellenando con ceros o truncando a la precisión."""
    values = [int(c) for c in coeffs][:precision + 1]
    values.extend([0] * (precision + 1 - len(values)))
    if modulus:
        values = [c % modulus for c in values]
    return TruncSeries(tuple(values), precision, modulus)


def one(precision: int) -> TruncSeries:
    return from_coeffs([1], precision)


def linear(constant: int, slope: int, precision: int) -> TruncSeries:
    """La serie constant + slope·x."""
    return from_coeffs([constant, slope], precision)


def _common(a: TruncSeries, b: TruncSeries) -> Tuple[int, int]:
    return min(a.precision, b.precision), gcd(a.modulus, b.modulus)


def _to_ring(a: TruncSeries):
    return _RING.from_dict({(i,): ZZ(c) for i, c in enumerate(a.coeffs) if c})


def _from_ring(p, precision: int, modulus: int) -> TruncSeries:
    return from_coeffs((p.get((i,), 0) for i in range(precision + 1)), precision, modulus)


def add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    precision, modulus = _common(a, b)
    return from_coeffs(
        (a.coeffs[i] + b.coeffs[i] for i in range(precision + 1)), precision, modulus
    )


def scale(a: TruncSeries, factor: int) -> TruncSeries:
    return from_coeffs((factor * c for c in a.coeffs), a.precision, a.modulus)


def neg(a: TruncSeries) -> TruncSeries:
    return scale(a, -1)


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Producto de Cauchy truncado a la menor de las dos precisiones."""
    precision, modulus = _common(a, b)
    product = rs_mul(_to_ring(a), _to_ring(b), _X, precision + 1)
    return _from_ring(product, precision, modulus)


def inv(a: TruncSeries) -> TruncSeries:
    """Inversa multiplicativa de una serie con término constante unidad.

    Args:
        a: Serie con término constante +1 o -1 (1 en el caso mod 2)

    Returns:
        b tal que mul(a, b) = 1 hasta la precisión de a

    Raises:
        SeriesError: Si el término constante no es una unidad de ZZ
    """
    constant = a.coeffs[0]
    if a.modulus:
        if constant % a.modulus != 1:
            raise SeriesError("El término constante no es invertible módulo 2")
    elif constant not in (1, -1):
        raise SeriesError(
            f"Solo se invierten series con término constante ±1, no {constant}"
        )
    if constant == -1:
        return neg(inv(neg(a)))
    inverse = rs_series_inversion(_to_ring(a), _X, a.precision + 1)
    return _from_ring(inverse, a.precision, a.modulus)


def int_pow(a: TruncSeries, e: int) -> TruncSeries:
    """Potencia entera a^e; los exponentes negativos pasan por ``inv``."""
    if e == 0:
        return from_coeffs([1], a.precision, a.modulus)
    if e < 0:
        return int_pow(inv(a), -e)
    power = rs_pow(_to_ring(a), e, _X, a.precision + 1)
    return _from_ring(power, a.precision, a.modulus)


def coeff(a: TruncSeries, i: int) -> int:
    """Coeficiente de x^i.

    Raises:
        SeriesError: Si i cae fuera del rango seguido por la serie
    """
    if i < 0 or i > a.precision:
        raise SeriesError(
            f"El índice {i} está fuera de la precisión 0..{a.precision}"
        )
    return a.coeffs[i]


def reduce_mod2(a: TruncSeries) -> TruncSeries:
    return from_coeffs(a.coeffs, a.precision, 2)


def truncate(a: TruncSeries, precision: int) -> TruncSeries:
    if precision > a.precision:
        raise SeriesError(
            f"No se puede ampliar la precisión de {a.precision} a {precision}"
        )
    return from_coeffs(a.coeffs, precision, a.modulus)

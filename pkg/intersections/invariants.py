"""
Invariantes de intersecciones completas X_n(d) a partir del multigrado.

Convenciones:
    - x es el generador estándar de H^2(CP^infinito).
    - c(xi)  = (1+x)^{-(n+k+1)} · prod(1 + d_i x)      (fibrado normal estable)
    - c(X)   = (1+x)^{n+k+1}    · prod(1 + d_i x)^{-1}
    - p(X)   = (1-x^2)^{n+k+1}  · prod(1 - d_i^2 x^2)^{-1}
    - chi(X) = d · coef_n(c(X))

El signo de las clases de Pontryagin sigue p(gamma^r) = 1 - r^2 x^2, así que
p_i difiere en (-1)^i del convenio clásico. ``pontryagin_classical`` da los
valores clásicos.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from math import prod
from typing import Dict, Iterable, Optional, Tuple

from . import series
from .series import TruncSeries

logger = logging.getLogger(__name__)


class MultidegreeError(ValueError):
    """Multigrado o dimensión inválidos."""


class WuTableError(RuntimeError):
    """La tabla de clases de Wu no coincide con el cálculo directo mod 2."""


@dataclass(frozen=True, eq=False)
class Multidegree:
    """Multiconjunto de grados d_1, ..., d_k tal como lo dio el usuario.

    Dos multigrados son iguales si coinciden tras quitar los 1s.
    """

    raw_degrees: Tuple[int, ...]

    def __post_init__(self):
        if not self.raw_degrees:
            raise MultidegreeError("El multigrado no puede estar vacío")
        bad = [d for d in self.raw_degrees if d < 1]
        if bad:
            raise MultidegreeError(f"Todos los grados deben ser >= 1, se recibió {bad[0]}")

    @property
    def canonical_degrees(self) -> Tuple[int, ...]:
        return tuple(sorted((d for d in self.raw_degrees if d != 1), reverse=True))

    @property
    def k(self) -> int:
        return len(self.raw_degrees)

    @property
    def total_degree(self) -> int:
        return prod(self.raw_degrees)

    @property
    def multiplicities(self) -> Dict[int, int]:
        """Grado -> multiplicidad, 1s incluidos."""
        return dict(Counter(self.raw_degrees))

    @property
    def even_degree_count(self) -> int:
        """p(d): cantidad de grados pares."""
        return sum(1 for d in self.raw_degrees if d % 2 == 0)

    @property
    def label(self) -> str:
        """Forma literal canónica, p. ej. ``25^130,15,9^65``; CP^n es ``1``."""
        counts = Counter(self.canonical_degrees)
        if not counts:
            return "1"
        parts = []
        for degree in sorted(counts, reverse=True):
            m = counts[degree]
            parts.append(str(degree) if m == 1 else f"{degree}^{m}")
        return ",".join(parts)

    def __eq__(self, other):
        if not isinstance(other, Multidegree):
            return NotImplemented
        return self.canonical_degrees == other.canonical_degrees

    def __hash__(self):
        return hash(self.canonical_degrees)

    def __repr__(self):
        return f"Multidegree({self.label})"


@dataclass(frozen=True)
class SullivanData:
    """Datos de Sullivan (d, p_1..p_{n/2}, chi) en el convenio de signos de la serie."""

    n: int
    total_degree: int
    pontryagin: Tuple[int, ...]
    euler: int

    def __post_init__(self):
        if self.n < 1:
            raise MultidegreeError(f"La dimensión debe ser >= 1, no {self.n}")
        if self.total_degree < 1:
            raise MultidegreeError("El grado total debe ser >= 1")
        if len(self.pontryagin) != self.n // 2:
            raise MultidegreeError(
                f"Se esperaban {self.n // 2} clases de Pontryagin, hay {len(self.pontryagin)}"
            )

    @property
    def pontryagin_classical(self) -> Tuple[int, ...]:
        return tuple((-1) ** i * p for i, p in enumerate(self.pontryagin, start=1))

    @property
    def evaluated_p1(self) -> Optional[int]:
        """p_1 · d, el número de Pontryagin de una superficie (n = 2)."""
        if not self.pontryagin:
            return None
        return self.pontryagin[0] * self.total_degree


@dataclass(frozen=True)
class WuProfile:
    p_count: int
    w2_nu: int
    w4_nu: int
    v2: int
    v4: int
    w4_X: int

    @property
    def spin(self) -> bool:
        return self.v2 == 0


# Columnas indexadas por p(d) mod 4: (w2 nu, w4 nu, w4 X)
WU_TABLE: Dict[int, Tuple[int, int, int]] = {
    0: (1, 1, 0),
    1: (0, 1, 1),
    2: (1, 0, 1),
    3: (0, 0, 0),
}


def canonicalize(raw: Iterable[int]) -> Multidegree:
    """Valida el multiconjunto y devuelve el Multidegree correspondiente."""
    return Multidegree(tuple(int(d) for d in raw))


def _check_dimension(n: int) -> None:
    if n < 1:
        raise MultidegreeError(f"La dimensión debe ser >= 1, no {n}")


def _degree_product(md: Multidegree, factor, exponent_sign: int, precision: int) -> TruncSeries:
    """prod factor(d)^{±m} sobre los grados crudos agrupados por multiplicidad."""
    result = series.one(precision)
    for degree, multiplicity in sorted(md.multiplicities.items()):
        result = result * series.int_pow(factor(degree, precision), exponent_sign * multiplicity)
    return result


def _linear_factor(degree: int, precision: int) -> TruncSeries:
    return series.linear(1, degree, precision)


def _quadratic_factor(degree: int, precision: int) -> TruncSeries:
    return series.from_coeffs([1, 0, -degree * degree], precision)


def chern_total_xi(n: int, md: Multidegree, precision: int) -> TruncSeries:
    """Clase de Chern total del fibrado normal estable xi_n(d)."""
    _check_dimension(n)
    base = series.int_pow(_linear_factor(1, precision), -(n + md.k + 1))
    return base * _degree_product(md, _linear_factor, 1, precision)


def chern_total_X(n: int, md: Multidegree, precision: int) -> TruncSeries:
    """Clase de Chern total del fibrado tangente de X_n(d)."""
    _check_dimension(n)
    base = series.int_pow(_linear_factor(1, precision), n + md.k + 1)
    return base * _degree_product(md, _linear_factor, -1, precision)


def pontryagin_total_X(n: int, md: Multidegree) -> TruncSeries:
    """p(X) hasta x^{2·floor(n/2)}; p_i es el coeficiente de x^{2i}."""
    _check_dimension(n)
    precision = 2 * (n // 2)
    base = series.int_pow(_quadratic_factor(1, precision), n + md.k + 1)
    return base * _degree_product(md, _quadratic_factor, -1, precision)


def pontryagin_total_xi(n: int, md: Multidegree) -> TruncSeries:
    """p(xi) = p(X)^{-1}, misma precisión que ``pontryagin_total_X``."""
    _check_dimension(n)
    precision = 2 * (n // 2)
    base = series.int_pow(_quadratic_factor(1, precision), -(n + md.k + 1))
    return base * _degree_product(md, _quadratic_factor, 1, precision)


def euler_char(n: int, md: Multidegree) -> int:
    top = series.coeff(chern_total_X(n, md, n), n)
    return md.total_degree * top


def sullivan_data(n: int, md: Multidegree) -> SullivanData:
    """Ensambla (d, (p_i), chi) para X_n(d)."""
    _check_dimension(n)
    p_series = pontryagin_total_X(n, md)
    pontryagin = tuple(series.coeff(p_series, 2 * i) for i in range(1, n // 2 + 1))
    return SullivanData(
        n=n,
        total_degree=md.total_degree,
        pontryagin=pontryagin,
        euler=euler_char(n, md),
    )


def wu_profile(md: Multidegree) -> WuProfile:
    """Perfil de Wu / Stiefel-Whitney de X_4(d).

    La tabla por p(d) mod 4 se contrasta con la reducción mod 2 de las series
    de Chern (w_{2i} = rho_2(c_i)).

    Raises:
        WuTableError: Si tabla y cálculo directo no coinciden
    """
    p_count = md.even_degree_count
    w2_nu, w4_nu, w4_X = WU_TABLE[p_count % 4]

    normal = series.reduce_mod2(chern_total_xi(4, md, 2))
    tangent = series.reduce_mod2(chern_total_X(4, md, 2))
    direct = (series.coeff(normal, 1), series.coeff(normal, 2), series.coeff(tangent, 2))
    if direct != (w2_nu, w4_nu, w4_X):
        logger.error("Tabla de Wu inconsistente para %s: %s != %s", md, direct, (w2_nu, w4_nu, w4_X))
        raise WuTableError(
            f"La tabla de Wu no coincide con el cálculo mod 2 para {md.label}"
        )

    return WuProfile(
        p_count=p_count,
        w2_nu=w2_nu,
        w4_nu=w4_nu,
        v2=w2_nu,
        v4=w4_nu,
        w4_X=w4_X,
    )

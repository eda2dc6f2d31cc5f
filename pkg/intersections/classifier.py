"""
Motor de veredictos para intersecciones completas.

Dado n y dos multigrados decide si las variedades son difeomorfas,
homeomorfas o si el resultado depende de una conjetura, siempre con la
etiqueta del resultado que lo justifica. Para n = 4 además clasifica un
multigrado en la tabla de rigidez respecto a la esfera exótica Sigma_ex^8.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import ceil
from typing import List, Optional, Tuple

from sympy import isprime, multiplicity, primerange

from . import citations
from .invariants import Multidegree, SullivanData, sullivan_data, wu_profile

logger = logging.getLogger(__name__)


class ClassifierError(ValueError):
    """Entrada fuera del dominio del clasificador."""


class Status(Enum):
    DIFFEOMORPHIC = "Diffeomorphic"
    NOT_DIFFEOMORPHIC = "NotDiffeomorphic"
    HOMEOMORPHIC_ONLY = "HomeomorphicOnly"
    SD_EQUAL_CONJECTURAL = "SDEqualConjectural"
    UNSUPPORTED = "Unsupported"


class Rigidity(Enum):
    STRONGLY_THETA_FLEXIBLE = "StronglyThetaFlexible"
    THETA_RIGID = "ThetaRigid"
    CONJECTURED_FLEXIBLE = "ConjecturedFlexible"
    CONJECTURED_RIGID = "ConjecturedRigid"


@dataclass(frozen=True)
class CaseRow:
    """Fila de la tabla de casos para X_4(d).

    ``inertia`` es el grupo de inercia I(X) dentro de Theta_8 ("0" o "Θ8").
    ``sd_equal_rule`` es el resultado que cubre pares con datos de Sullivan
    iguales en esta fila, independiente de la rigidez de una sola variedad.
    """

    v2: int
    v4: int
    d_parity: int
    rigidity: Rigidity
    is_conjecture: bool
    p1_mod8: int
    inertia: str
    treated_in: str
    sd_equal_rule: str
    notes: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Verdict:
    status: Status
    justification: str
    sd_equal: bool
    case_row: Optional[CaseRow] = None
    notes: Tuple[str, ...] = field(default=())

    def __str__(self) -> str:
        return f"{self.status.value} ({self.justification})"


def nu_p(d: int, p: int) -> int:
    """Valoración p-ádica de d.

    Raises:
        ClassifierError: Si p no es primo o d < 1
    """
    if not isprime(p):
        raise ClassifierError(f"{p} no es primo")
    if d < 1:
        raise ClassifierError(f"La valoración requiere d >= 1, no {d}")
    return int(multiplicity(p, d))


def kreck_traving_primes(n: int) -> List[Tuple[int, int]]:
    """Primos p con p(p-1) <= n+1 y el umbral ceil((2n+1)/(2(p-1))) + 1."""
    if n < 3:
        raise ClassifierError(f"El criterio de Kreck–Traving requiere n >= 3, no {n}")
    thresholds = []
    for p in primerange(2, n + 3):
        if p * (p - 1) > n + 1:
            continue
        bound = Fraction(2 * n + 1, 2 * (p - 1)) + 1
        thresholds.append((int(p), ceil(bound)))
    return thresholds


def kreck_traving_applies(n: int, d: int) -> bool:
    return all(nu_p(d, p) >= threshold for p, threshold in kreck_traving_primes(n))


def case_row(md: Multidegree) -> CaseRow:
    """Ubica X_4(d) en la tabla indexada por (v2, v4)."""
    profile = wu_profile(md)
    sd = sullivan_data(4, md)
    d = sd.total_degree
    p1_mod8 = sd.pontryagin[0] % 8
    notes: List[str] = []

    if profile.v2 == 0:
        rigidity = Rigidity.STRONGLY_THETA_FLEXIBLE
        inertia = "0"
        treated_in = citations.THEOREM_1_7
        sd_equal_rule = citations.THEOREM_1_7
    elif profile.v4 == 0:
        rigidity = Rigidity.THETA_RIGID
        inertia = "Θ8"
        if md.canonical_degrees == (2, 2):
            treated_in = citations.REMARK_22
            sd_equal_rule = citations.SAME_MULTIDEGREE
        else:
            treated_in = citations.THEOREM_1_9
            sd_equal_rule = citations.THEOREM_1_9
    else:
        if p1_mod8 == 3:
            rigidity, inertia = Rigidity.CONJECTURED_FLEXIBLE, "0"
        elif p1_mod8 == 7:
            rigidity, inertia = Rigidity.CONJECTURED_RIGID, "Θ8"
        else:
            raise ClassifierError(
                f"p1 = {sd.pontryagin[0]} no es 3 mod 4 con v2 = v4 = 1 ({md.label})"
            )
        treated_in = citations.INERTIA_CONJECTURE
        sd_equal_rule = citations.THEOREM_1_12_A if d % 2 == 0 else citations.THEOREM_1_12_B

    if not md.canonical_degrees:
        notes.append(
            f"{citations.KASILINGAM}: CP^4 no es difeomorfa a CP^4 # Sigma_ex, "
            "consistente con I(CP^4) = 0"
        )

    return CaseRow(
        v2=profile.v2,
        v4=profile.v4,
        d_parity=d % 2,
        rigidity=rigidity,
        is_conjecture=rigidity in (Rigidity.CONJECTURED_FLEXIBLE, Rigidity.CONJECTURED_RIGID),
        p1_mod8=p1_mod8,
        inertia=inertia,
        treated_in=treated_in,
        sd_equal_rule=sd_equal_rule,
        notes=tuple(notes),
    )


def _differences(a: SullivanData, b: SullivanData) -> List[str]:
    diffs = []
    if a.total_degree != b.total_degree:
        low, high = sorted((a.total_degree, b.total_degree))
        diffs.append(f"grado total distinto ({low} vs {high})")
    for i, (pa, pb) in enumerate(zip(a.pontryagin, b.pontryagin), start=1):
        if pa != pb:
            diffs.append(f"p{i} distinto")
    if a.euler != b.euler:
        diffs.append("característica de Euler distinta")
    return diffs


def _pair_case_row(a: Multidegree, b: Multidegree) -> Optional[CaseRow]:
    row_a, row_b = case_row(a), case_row(b)
    if row_a != row_b:
        logger.warning("Filas de caso distintas para datos de Sullivan iguales: %s, %s", a, b)
        return None
    return row_a


def classify(n: int, a: Multidegree, b: Multidegree) -> Verdict:
    """Decide el tipo de X_n(a) frente a X_n(b).

    Args:
        n: Dimensión compleja, n >= 2
        a: Primer multigrado
        b: Segundo multigrado

    Returns:
        Verdict con estado, etiqueta de cita y, para n = 4 con datos de
        Sullivan iguales, la fila de la tabla de casos

    Raises:
        ClassifierError: Si n < 2
    """
    if n < 2:
        raise ClassifierError(f"La clasificación requiere n >= 2, no {n}")

    sd_a, sd_b = sullivan_data(n, a), sullivan_data(n, b)
    sd_equal = sd_a == sd_b
    row = _pair_case_row(a, b) if n == 4 and sd_equal else None

    if a.canonical_degrees == b.canonical_degrees:
        return Verdict(Status.DIFFEOMORPHIC, citations.SAME_MULTIDEGREE, sd_equal, row,
                       ("mismo multigrado canónico",))

    if n == 2:
        key_a = (sd_a.evaluated_p1, sd_a.euler)
        key_b = (sd_b.evaluated_p1, sd_b.euler)
        if key_a == key_b:
            return Verdict(Status.HOMEOMORPHIC_ONLY, citations.FREEDMAN, sd_equal, None,
                           (f"p1·d = {key_a[0]}, chi = {key_a[1]}",))
        return Verdict(
            Status.UNSUPPORTED,
            citations.FREEDMAN,
            sd_equal,
            None,
            (
                "no homeomorfas por el criterio de Freedman (p1·d o chi distintos)",
                "la clasificación suave en n = 2 está abierta y d no es invariante de difeomorfismo",
            ),
        )

    if not sd_equal:
        return Verdict(Status.NOT_DIFFEOMORPHIC, citations.SC_CONVERSE, False, None,
                       tuple(_differences(sd_a, sd_b)))

    if n == 3:
        return Verdict(Status.DIFFEOMORPHIC, citations.WALL_JUPP, True)
    if n == 4:
        notes = (f"caso cubierto por {row.sd_equal_rule}",) if row else ()
        return Verdict(Status.DIFFEOMORPHIC, citations.THEOREM_1_2, True, row, notes)
    if kreck_traving_applies(n, sd_a.total_degree):
        return Verdict(Status.DIFFEOMORPHIC, citations.KRECK_TRAVING, True)
    if 5 <= n <= 7:
        return Verdict(Status.HOMEOMORPHIC_ONLY, citations.FANG_WANG, True, None,
                       ("difeomorfía abierta: solo homeomorfismo probado",))
    return Verdict(Status.SD_EQUAL_CONJECTURAL, citations.SD_EQUAL, True, None,
                   ("conjetura de Sullivan abierta en esta dimensión",))

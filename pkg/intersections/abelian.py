"""
Calculadora de grupos abelianos finitamente generados.

Un grupo se describe por una presentación (generadores y relaciones como
vectores columna enteros) y un homomorfismo por una matriz entera sobre los
generadores. Todo cálculo de núcleo, imagen y conúcleo se reduce a la forma
normal de Smith de ``sympy.polys.matrices.normalforms``.
"""

import itertools
import logging
from dataclasses import dataclass, field
from math import gcd, prod
from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

logger = logging.getLogger(__name__)

Matrix = List[List[int]]
Vector = Tuple[int, ...]


class GroupError(ValueError):
    """Homomorfismo mal definido o formas incompatibles."""


class AmbiguousExtensionError(GroupError):
    """El corchete de Toda no basta para fijar la extensión."""


class SmithDecomposition(NamedTuple):
    u: Matrix
    d: Matrix
    v: Matrix

    @property
    def diagonal(self) -> List[int]:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.v)))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def _identity(size: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def _domain_matrix(rows: Sequence[Sequence[int]], nrows: int, ncols: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (nrows, ncols), ZZ)


def _to_ints(m: DomainMatrix) -> Matrix:
    return [[int(x) for x in row] for row in m.to_list()]


def _matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _columns(m: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    return [tuple(row[j] for row in m) for j in range(ncols)]


def smith_normal_form(matrix: Sequence[Sequence[int]], shape: Optional[Tuple[int, int]] = None) -> SmithDecomposition:
    """Forma normal de Smith U·M·V = D.

    Args:
        matrix: Matriz entera como lista de filas
        shape: Forma (filas, columnas); obligatoria si alguna dimensión es 0

    Returns:
        (U, D, V) con U y V unimodulares y diagonal d_1 | d_2 | ... no negativa
    """
    if shape is None:
        shape = (len(matrix), len(matrix[0]) if matrix else 0)
    nrows, ncols = shape
    if any(len(row) != ncols for row in matrix) or len(matrix) != nrows:
        raise GroupError(f"La matriz no tiene forma {shape}")
    if nrows == 0 or ncols == 0:
        return SmithDecomposition(_identity(nrows), [[0] * ncols for _ in range(nrows)], _identity(ncols))

    smf, s, t = smith_normal_decomp(_domain_matrix(matrix, nrows, ncols))
    u, d, v = _to_ints(s), _to_ints(smf), _to_ints(t)
    # diagonal con signo positivo
    for i in range(min(nrows, ncols)):
        if d[i][i] < 0:
            d[i][i] = -d[i][i]
            u[i] = [-x for x in u[i]]
    return SmithDecomposition(u, d, v)


def _unimodular_inverse(m: Matrix) -> Matrix:
    size = len(m)
    if size == 0:
        return []
    inverse = _domain_matrix(m, size, size).to_field().inv().convert_to(ZZ)
    return _to_ints(inverse)


class _Lattice:
    """Sublattice de Z^ambient generado por unas columnas."""

    def __init__(self, ambient: int, generators: Iterable[Sequence[int]]):
        self.ambient = ambient
        gens = [tuple(g) for g in generators]
        if ambient == 0 or not gens:
            self._u: Matrix = _identity(ambient)
            self._d: List[int] = []
            self.basis: List[Vector] = []
            return
        matrix = [[g[i] for g in gens] for i in range(ambient)]
        snf = smith_normal_form(matrix, (ambient, len(gens)))
        self._u = snf.u
        self._d = [x for x in snf.diagonal if x]
        u_inv = _unimodular_inverse(snf.u)
        self.basis = [
            tuple(d_i * u_inv[row][i] for row in range(ambient)) for i, d_i in enumerate(self._d)
        ]

    @property
    def rank(self) -> int:
        return len(self._d)

    def coordinates(self, vector: Sequence[int]) -> Optional[List[int]]:
        """Coordenadas en ``basis`` o None si el vector no pertenece."""
        z = _matvec(self._u, vector)
        coords = []
        for i, value in enumerate(z):
            if i < self.rank:
                if value % self._d[i]:
                    return None
                coords.append(value // self._d[i])
            elif value:
                return None
        return coords

    def contains(self, vector: Sequence[int]) -> bool:
        return self.coordinates(vector) is not None

    def same_as(self, other: '_Lattice') -> bool:
        return all(other.contains(b) for b in self.basis) and all(self.contains(b) for b in other.basis)


@dataclass(frozen=True)
class FinAbGroup:
    """Forma canónica Z^free_rank ⊕ Z/t_1 ⊕ ... con t_1 | t_2 | ..."""

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise GroupError("El rango libre no puede ser negativo")
        if any(t < 2 for t in self.torsion):
            raise GroupError(f"Los coeficientes de torsión deben ser >= 2: {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise GroupError(f"La torsión no está en orden de divisibilidad: {self.torsion}")

    @classmethod
    def from_invariants(cls, factors: Iterable[int]) -> 'FinAbGroup':
        """Grupo ⊕ Z/f_i para factores arbitrarios (0 significa Z)."""
        factors = [abs(int(f)) for f in factors]
        if not factors:
            return cls()
        size = len(factors)
        diagonal = [[factors[i] if i == j else 0 for j in range(size)] for i in range(size)]
        return _group_from_relations(size, _columns(diagonal, size))

    @classmethod
    def cyclic(cls, order: int) -> 'FinAbGroup':
        return cls.from_invariants([order])

    @property
    def generator_count(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def order(self) -> Optional[int]:
        """Orden del grupo, None si es infinito."""
        return None if self.free_rank else prod(self.torsion)

    @property
    def exponent(self) -> Optional[int]:
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.torsion) <= 1

    def presentation(self) -> 'Presentation':
        return Presentation.from_group(self)

    def render(self) -> str:
        parts = [f"ℤ/{t}" for t in self.torsion] + ["ℤ"] * self.free_rank
        return "⊕".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()


def direct_sum(a: FinAbGroup, b: FinAbGroup) -> FinAbGroup:
    return FinAbGroup.from_invariants(a.torsion + b.torsion + (0,) * (a.free_rank + b.free_rank))


@dataclass(frozen=True)
class Presentation:
    """Grupo Z^generators / <relations>; cada relación es un vector columna."""

    generators: int
    relations: Tuple[Vector, ...] = ()

    def __post_init__(self):
        for rel in self.relations:
            if len(rel) != self.generators:
                raise GroupError(
                    f"Relación {rel} de longitud distinta a {self.generators} generadores"
                )

    @classmethod
    def from_group(cls, group: FinAbGroup) -> 'Presentation':
        size = group.generator_count
        relations = []
        for i, t in enumerate(group.torsion):
            rel = [0] * size
            rel[i] = t
            relations.append(tuple(rel))
        return cls(size, tuple(relations))

    @classmethod
    def trivial(cls) -> 'Presentation':
        return cls(0)

    def group(self) -> FinAbGroup:
        return _group_from_relations(self.generators, self.relations)

    def lattice(self) -> _Lattice:
        return _Lattice(self.generators, self.relations)

    def _diagonal_orders(self) -> List[int]:
        orders = [0] * self.generators
        for rel in self.relations:
            support = [i for i, x in enumerate(rel) if x]
            if len(support) > 1:
                raise GroupError("Solo se reducen presentaciones diagonales")
            if support:
                i = support[0]
                orders[i] = gcd(orders[i], rel[i])
        return orders

    def elements(self) -> List[Vector]:
        """Representantes de todos los elementos de un grupo finito diagonal."""
        orders = self._diagonal_orders()
        if any(order == 0 for order in orders):
            raise GroupError("El grupo es infinito")
        return [tuple(v) for v in itertools.product(*(range(order) for order in orders))]

    def reduce(self, vector: Sequence[int]) -> Vector:
        """Representante canónico de un vector en una presentación diagonal."""
        orders = self._diagonal_orders()
        return tuple(x % order if order else x for x, order in zip(vector, orders))


def _as_presentation(value) -> Presentation:
    if isinstance(value, FinAbGroup):
        return value.presentation()
    if isinstance(value, Presentation):
        return value
    raise GroupError(f"Se esperaba un grupo o una presentación, no {type(value).__name__}")


@dataclass(frozen=True)
class GroupHom:
    """Homomorfismo definido por su matriz (filas: generadores del destino)."""

    source: Presentation
    target: Presentation
    matrix: Tuple[Vector, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, 'source', _as_presentation(self.source))
        object.__setattr__(self, 'target', _as_presentation(self.target))
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if not rows and self.target.generators:
            rows = tuple((0,) * self.source.generators for _ in range(self.target.generators))
        object.__setattr__(self, 'matrix', rows)
        if len(rows) != self.target.generators or any(len(r) != self.source.generators for r in rows):
            raise GroupError(
                f"La matriz debe ser {self.target.generators}x{self.source.generators}"
            )
        target_lattice = self.target.lattice()
        for rel in self.source.relations:
            if not target_lattice.contains(_matvec(rows, rel)):
                raise GroupError(
                    f"Homomorfismo mal definido: la relación {rel} no va a una relación"
                )

    @classmethod
    def identity(cls, group) -> 'GroupHom':
        p = _as_presentation(group)
        return cls(p, p, tuple(tuple(r) for r in _identity(p.generators)))

    @classmethod
    def zero(cls, source, target) -> 'GroupHom':
        return cls(source, target)

    @property
    def columns(self) -> List[Vector]:
        return _columns(self.matrix, self.source.generators)

    def apply(self, vector: Sequence[int]) -> Vector:
        return _matvec(self.matrix, vector)

    @property
    def is_zero(self) -> bool:
        lattice = self.target.lattice()
        return all(lattice.contains(c) for c in self.columns)


def compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """g ∘ f."""
    if f.target != g.source:
        raise GroupError("Composición con formas incompatibles")
    columns = [g.apply(c) for c in f.columns]
    rows = tuple(tuple(col[i] for col in columns) for i in range(g.target.generators))
    return GroupHom(f.source, g.target, rows)


def _group_from_relations(generators: int, relations: Sequence[Sequence[int]]) -> FinAbGroup:
    if generators == 0:
        return FinAbGroup()
    relations = [tuple(r) for r in relations]
    if not relations:
        return FinAbGroup(free_rank=generators)
    matrix = [[rel[i] for rel in relations] for i in range(generators)]
    diagonal = smith_normal_form(matrix, (generators, len(relations))).diagonal
    nonzero = [x for x in diagonal if x]
    return FinAbGroup(
        free_rank=generators - len(nonzero),
        torsion=tuple(x for x in nonzero if x > 1),
    )


def _subquotient(ambient: int, numerator: Iterable[Sequence[int]], denominator: Iterable[Sequence[int]]) -> FinAbGroup:
    """L/M para lattices M ⊆ L ⊆ Z^ambient dados por generadores."""
    lattice = _Lattice(ambient, numerator)
    relations = []
    for vector in denominator:
        coords = lattice.coordinates(vector)
        if coords is None:
            raise GroupError("El denominador no está contenido en el numerador")
        relations.append(tuple(coords))
    return _group_from_relations(lattice.rank, relations)


def _nullspace(matrix: Sequence[Sequence[int]], nrows: int, ncols: int) -> List[Vector]:
    """Base entera de {x : M·x = 0}."""
    if ncols == 0:
        return []
    if nrows == 0:
        return [tuple(r) for r in _identity(ncols)]
    snf = smith_normal_form(matrix, (nrows, ncols))
    return _columns(snf.v, ncols)[snf.rank:]


def _kernel_generators(h: GroupHom) -> List[Vector]:
    """Generadores de {x ∈ Z^g_s : A·x ∈ <R_t>} (sin las relaciones de la fuente)."""
    g_s, g_t = h.source.generators, h.target.generators
    stacked = [list(h.matrix[i]) + [rel[i] for rel in h.target.relations] for i in range(g_t)]
    null = _nullspace(stacked, g_t, g_s + len(h.target.relations))
    return [v[:g_s] for v in null]


def cokernel(h: GroupHom) -> FinAbGroup:
    return _group_from_relations(h.target.generators, list(h.target.relations) + h.columns)


def image(h: GroupHom) -> FinAbGroup:
    relations = list(h.target.relations)
    return _subquotient(h.target.generators, h.columns + relations, relations)


def kernel(h: GroupHom) -> FinAbGroup:
    return _subquotient(h.source.generators, _kernel_generators(h), h.source.relations)


def is_isomorphism(h: GroupHom) -> bool:
    return kernel(h).is_trivial and cokernel(h).is_trivial


def _image_lattice(h: GroupHom) -> _Lattice:
    return _Lattice(h.target.generators, h.columns + list(h.target.relations))


def _kernel_lattice(h: GroupHom) -> _Lattice:
    return _Lattice(h.source.generators, _kernel_generators(h) + list(h.source.relations))


def in_image(h: GroupHom, vector: Sequence[int]) -> bool:
    return _image_lattice(h).contains(vector)


def same_image(a: GroupHom, b: GroupHom) -> bool:
    """Compara im(a) e im(b) como subgrupos del mismo destino."""
    if a.target != b.target:
        raise GroupError("Las imágenes viven en grupos distintos")
    return _image_lattice(a).same_as(_image_lattice(b))


def image_equals_kernel(f: GroupHom, g: GroupHom) -> bool:
    """im(f) = ker(g) en el grupo intermedio."""
    if f.target != g.source:
        raise GroupError("Composición con formas incompatibles")
    return _image_lattice(f).same_as(_kernel_lattice(g))


def verify_exact(segment: Sequence[GroupHom]) -> bool:
    """Exactitud en cada nodo interior de una sucesión de homomorfismos.

    Raises:
        GroupError: Si dos homomorfismos consecutivos no encajan
    """
    if not segment:
        raise GroupError("Sucesión vacía")
    for f, g in zip(segment, segment[1:]):
        if f.target != g.source:
            raise GroupError("Composición con formas incompatibles")
    exact = all(image_equals_kernel(f, g) for f, g in zip(segment, segment[1:]))
    logger.debug("Exactitud de una sucesión de %d flechas: %s", len(segment), exact)
    return exact


@dataclass(frozen=True)
class BracketFact:
    """Corchete de Toda <a, g, f> registrado como conjunto de elementos con nombre.

    ``indeterminacy`` es el subgrupo de indeterminación (incluye "0"); el
    corchete es una clase lateral suya, así que contiene 0 sii la corta.
    """

    bracket: Tuple[str, str, str]
    value_set: FrozenSet[str]
    indeterminacy: FrozenSet[str]
    provenance: str = ""
    contains_zero: Optional[bool] = None

    def __post_init__(self):
        object.__setattr__(self, 'value_set', frozenset(self.value_set))
        object.__setattr__(self, 'indeterminacy', frozenset(self.indeterminacy))
        computed = bool(self.value_set & self.indeterminacy)
        if self.contains_zero is not None and self.contains_zero != computed:
            raise GroupError(
                f"contains_zero = {self.contains_zero} contradice los valores de ⟨{', '.join(self.bracket)}⟩"
            )
        object.__setattr__(self, 'contains_zero', computed)

    @property
    def label(self) -> str:
        return f"⟨{','.join(self.bracket)}⟩"


def classify_cyclic_extension(sub: FinAbGroup, quot: FinAbGroup, bracket: BracketFact) -> FinAbGroup:
    """Extensión 0 → sub → E → quot → 0 decidida por el corchete de Toda.

    La extensión es trivial sii 0 pertenece al corchete. Sin escisión solo se
    resuelve el caso Z/2 por Z/2, cuyo único candidato es Z/4.

    Raises:
        GroupError: Si sub o quot no son cíclicos finitos
        AmbiguousExtensionError: Extensión no escindida fuera del caso 2 por 2
    """
    for name, group in (("sub", sub), ("quot", quot)):
        if not group.is_cyclic or group.free_rank:
            raise GroupError(f"{name} debe ser cíclico finito, es {group.render()}")
    if bracket.contains_zero:
        return direct_sum(sub, quot)
    if sub.order == 2 and quot.order == 2:
        return FinAbGroup.cyclic(4)
    raise AmbiguousExtensionError(
        f"extensión ambigua: {sub.render()} por {quot.render()} no escindida con {bracket.label}"
    )

"""
Búsqueda de multigrados distintos con los mismos datos de Sullivan.

El espacio de multigrados canónicos (grados >= 2, orden descendente) se
recorre por topes o, si se fija un grado total, por factorizaciones. El
espacio se reparte en shards según el grado mayor; cada shard calcula sus
datos de Sullivan en un pool de ``concurrent.futures`` y la mezcla final es
una ordenación, así que el informe no depende del número de shards.

Las colisiones se agrupan primero por grado total (condición necesaria) y
luego por un digest; todo par emitido se verifica de forma exacta.
"""

import hashlib
import itertools
import json
import logging
import time
from collections import defaultdict
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from math import prod
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Tuple

from sympy import divisors

from .conf import get_setting
from .invariants import Multidegree, SullivanData, sullivan_data

logger = logging.getLogger(__name__)

DISCLAIMER = (
    "Búsqueda exhaustiva solo dentro de la caja enumerada; "
    "no se afirma nada fuera de ella."
)


class SearchSpecError(ValueError):
    """Parámetros de búsqueda inválidos."""


class EnumerationLimitExceeded(RuntimeError):
    """El espacio enumerado supera el límite configurado."""

    def __init__(self, limit: int, enumerated: int):
        self.limit = limit
        self.enumerated = enumerated
        super().__init__(
            f"La enumeración superó el límite de {limit} multigrados "
            f"({enumerated} enumerados al abortar)"
        )


@dataclass(frozen=True)
class SearchSpec:
    """Caja de búsqueda.

    ``max_degree`` puede omitirse si se fija ``total_degree_target``; en ese
    caso el tope por grado es el propio objetivo.
    """

    n: int
    max_degree: Optional[int] = None
    max_k: int = 1
    total_degree_target: Optional[int] = None
    shard_count: int = 1
    limit: Optional[int] = None

    def __post_init__(self):
        if self.n < 3:
            raise SearchSpecError(f"La búsqueda requiere n >= 3, no {self.n}")
        if self.max_k < 1:
            raise SearchSpecError("max_k debe ser >= 1")
        if self.max_degree is not None and self.max_degree < 1:
            raise SearchSpecError("max_degree debe ser >= 1")
        if self.total_degree_target is not None and self.total_degree_target < 1:
            raise SearchSpecError("El grado total objetivo debe ser >= 1")
        if self.max_degree is None and self.total_degree_target is None:
            raise SearchSpecError("Hace falta max_degree o un grado total objetivo")
        if self.shard_count < 1:
            raise SearchSpecError("shard_count debe ser >= 1")
        if self.limit is not None and self.limit < 1:
            raise SearchSpecError("El límite debe ser >= 1")

    @property
    def degree_cap(self) -> int:
        if self.max_degree is not None:
            return self.max_degree
        return self.total_degree_target

    @property
    def resolved_limit(self) -> int:
        return self.limit if self.limit is not None else int(get_setting('SEARCH_LIMIT'))

    def echo(self) -> Dict[str, object]:
        """Parámetros que determinan el resultado (sin shards ni límite)."""
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "max_k": self.max_k,
            "total_degree_target": self.total_degree_target,
        }


class PairCheck(NamedTuple):
    equal: bool
    first: SullivanData
    second: SullivanData


class CollisionPair(NamedTuple):
    a: Multidegree
    b: Multidegree
    sullivan: SullivanData


@dataclass(frozen=True)
class CollisionReport:
    spec: SearchSpec
    pairs: Tuple[CollisionPair, ...]
    enumerated: int
    buckets: int
    comparisons: int
    multidegrees: Tuple[Multidegree, ...] = ()
    wall_time: float = field(default=0.0, compare=False)
    disclaimer: str = DISCLAIMER


def order_key(degrees: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    """Grado total y luego orden lexicográfico descendente."""
    return prod(degrees), tuple(-d for d in degrees)


def _shard_of(degrees: Tuple[int, ...], shard_count: int) -> int:
    return degrees[0] % shard_count if degrees else 0


def _cap_driven(cap: int, max_k: int, shard: Optional[int], shard_count: int) -> Iterator[Tuple[int, ...]]:
    if shard is None or shard == 0:
        yield ()
    for largest in range(cap, 1, -1):
        if shard is not None and largest % shard_count != shard:
            continue
        for size in range(max_k):
            for rest in itertools.combinations_with_replacement(range(largest, 1, -1), size):
                yield (largest,) + rest


def _factorizations(target: int, largest: int, max_parts: int) -> Iterator[Tuple[int, ...]]:
    """Factorizaciones de target en partes entre 2 y largest, no crecientes."""
    if target == 1:
        yield ()
        return
    if max_parts == 0:
        return
    for part in sorted(divisors(target), reverse=True):
        if part < 2 or part > largest:
            continue
        for rest in _factorizations(target // part, part, max_parts - 1):
            yield (part,) + rest


def _raw_space(spec: SearchSpec, shard: Optional[int]) -> Iterator[Tuple[int, ...]]:
    if spec.total_degree_target is None:
        return _cap_driven(spec.degree_cap, spec.max_k, shard, spec.shard_count)
    space = _factorizations(spec.total_degree_target, spec.degree_cap, spec.max_k)
    if shard is None:
        return space
    return (d for d in space if _shard_of(d, spec.shard_count) == shard)


def _collect(spec: SearchSpec, shard: Optional[int]) -> List[Tuple[int, ...]]:
    limit = spec.resolved_limit
    collected = []
    for degrees in _raw_space(spec, shard):
        collected.append(degrees)
        if len(collected) > limit:
            raise EnumerationLimitExceeded(limit, len(collected))
    collected.sort(key=order_key)
    return collected


def enumerate_multidegrees(spec: SearchSpec, shard: Optional[int] = None) -> Iterator[Multidegree]:
    """Multigrados canónicos de la caja, cada uno una vez y en orden determinista.

    Raises:
        EnumerationLimitExceeded: Si la caja supera el límite de enumeración
    """
    for degrees in _collect(spec, shard):
        yield Multidegree(degrees or (1,))


def verify_pair(n: int, a: Multidegree, b: Multidegree) -> PairCheck:
    first, second = sullivan_data(n, a), sullivan_data(n, b)
    return PairCheck(first == second, first, second)


def sd_digest(sd: SullivanData) -> str:
    payload = json.dumps(
        [str(sd.total_degree), [str(p) for p in sd.pontryagin], str(sd.euler)],
        separators=(',', ':'),
    ).encode('utf-8')
    return hashlib.sha256(payload).hexdigest()


class ShardResult(NamedTuple):
    shard: int
    entries: List[Tuple[Multidegree, SullivanData]]


def scan_shard(spec: SearchSpec, shard: int) -> ShardResult:
    """Enumera un shard y calcula los datos de Sullivan de cada multigrado."""
    entries = [(md, sullivan_data(spec.n, md)) for md in enumerate_multidegrees(spec, shard)]
    logger.info("Shard %d/%d: %d multigrados", shard + 1, spec.shard_count, len(entries))
    return ShardResult(shard, entries)


def _executor(workers: int) -> Executor:
    if get_setting('SEARCH_EXECUTOR') == 'process':
        return ProcessPoolExecutor(max_workers=workers)
    return ThreadPoolExecutor(max_workers=workers)


def find_collisions(
    spec: SearchSpec,
    digest: Callable[[SullivanData], str] = sd_digest,
) -> CollisionReport:
    """Busca pares de multigrados distintos con datos de Sullivan iguales.

    Args:
        spec: Caja de búsqueda
        digest: Clave de agrupación dentro de cada grado total; nunca sustituye
            a la comparación exacta

    Raises:
        EnumerationLimitExceeded: Si la caja supera el límite
    """
    spec = replace(spec, limit=spec.resolved_limit)
    start = time.perf_counter()
    workers = max(1, min(int(get_setting('SEARCH_WORKERS')), spec.shard_count))

    results: List[ShardResult] = []
    with _executor(workers) as pool:
        futures = [pool.submit(scan_shard, spec, shard) for shard in range(spec.shard_count)]
        try:
            for future in futures:
                results.append(future.result())
        except EnumerationLimitExceeded as exc:
            for future in futures:
                future.cancel()
            seen = exc.enumerated + sum(len(r.entries) for r in results)
            logger.warning("Búsqueda abortada por el límite: %s", exc)
            raise EnumerationLimitExceeded(spec.limit, seen) from exc

    entries = sorted(
        (entry for result in results for entry in result.entries),
        key=lambda entry: order_key(entry[0].canonical_degrees),
    )
    if len(entries) > spec.limit:
        raise EnumerationLimitExceeded(spec.limit, len(entries))

    by_degree: Dict[int, List[Tuple[Multidegree, SullivanData]]] = defaultdict(list)
    for md, sd in entries:
        by_degree[sd.total_degree].append((md, sd))

    pairs: List[CollisionPair] = []
    buckets = comparisons = 0
    for total in sorted(by_degree):
        group = by_degree[total]
        if len(group) < 2:
            continue
        buckets += 1
        keyed: Dict[str, List[Tuple[Multidegree, SullivanData]]] = defaultdict(list)
        for md, sd in group:
            keyed[digest(sd)].append((md, sd))
        for key in sorted(keyed):
            for (a, sd_a), (b, sd_b) in itertools.combinations(keyed[key], 2):
                comparisons += 1
                if sd_a != sd_b or a == b:
                    continue
                if not verify_pair(spec.n, a, b).equal:
                    logger.error("Par descartado en la verificación: %s, %s", a, b)
                    continue
                pairs.append(CollisionPair(a, b, sd_a))

    pairs.sort(key=lambda p: (order_key(p.a.canonical_degrees), order_key(p.b.canonical_degrees)))
    elapsed = time.perf_counter() - start
    logger.info(
        "Búsqueda n=%d: %d multigrados, %d cubos, %d comparaciones, %d pares en %.3fs con %d shards",
        spec.n, len(entries), buckets, comparisons, len(pairs), elapsed, spec.shard_count,
    )
    return CollisionReport(
        spec=spec,
        pairs=tuple(pairs),
        enumerated=len(entries),
        buckets=buckets,
        comparisons=comparisons,
        multidegrees=tuple(md for md, _ in entries),
        wall_time=elapsed,
    )

"""
Registros de salida de los comandos.

Todo registro es un dict JSON con ``schema: 1``. Los enteros de precisión
arbitraria se emiten como cadenas decimales y los campos que dependen de una
conjetura llevan ``"conjecture": true``. La salida JSON usa claves ordenadas
y no incluye marcas de tiempo, de modo que dos invocaciones iguales producen
bytes idénticos.
"""

import json
from typing import Any, Dict, List, Mapping, Tuple

from .classifier import CaseRow, Status, Verdict
from .invariants import Multidegree, SullivanData, WuProfile
from .ledger import DerivationReport
from .search import CollisionReport, EnumerationLimitExceeded, SearchSpec

SCHEMA_VERSION = 1

Record = Dict[str, Any]


class RecordError(ValueError):
    """Registro que no respeta el esquema."""


def envelope(command: str, body: Mapping[str, Any]) -> Record:
    record = dict(body)
    record["schema"] = SCHEMA_VERSION
    record["command"] = command
    return record


def multidegree_record(md: Multidegree) -> Record:
    return {"label": md.label, "total_degree": str(md.total_degree)}


def sullivan_record(sd: SullivanData, classical_signs: bool = False) -> Record:
    record = {
        "n": sd.n,
        "d": str(sd.total_degree),
        "pontryagin": [str(p) for p in sd.pontryagin],
        "euler": str(sd.euler),
    }
    if classical_signs:
        record["pontryagin_classical"] = [str(p) for p in sd.pontryagin_classical]
    return record


def sullivan_data_from_record(record: Mapping[str, Any]) -> SullivanData:
    """Reconstruye SullivanData a partir de ``sullivan_record``.

    Raises:
        RecordError: Si faltan campos o los valores no son enteros
    """
    try:
        return SullivanData(
            n=int(record["n"]),
            total_degree=int(record["d"]),
            pontryagin=tuple(int(p) for p in record["pontryagin"]),
            euler=int(record["euler"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise RecordError(f"Registro de datos de Sullivan inválido: {exc}") from exc


def wu_record(profile: WuProfile) -> Record:
    return {
        "p_count": profile.p_count,
        "w2_nu": profile.w2_nu,
        "w4_nu": profile.w4_nu,
        "v2": profile.v2,
        "v4": profile.v4,
        "w4_X": profile.w4_X,
        "spin": profile.spin,
    }


def case_row_record(row: CaseRow) -> Record:
    return {
        "v2": row.v2,
        "v4": row.v4,
        "d_parity": row.d_parity,
        "p1_mod8": row.p1_mod8,
        "rigidity": {"value": row.rigidity.value, "conjecture": row.is_conjecture},
        "inertia": {"value": row.inertia, "conjecture": row.is_conjecture},
        "treated_in": row.treated_in,
        "sd_equal_rule": row.sd_equal_rule,
        "notes": list(row.notes),
    }


def verdict_record(verdict: Verdict) -> Record:
    record = {
        "status": verdict.status.value,
        "citation": verdict.justification,
        "verdict": str(verdict),
        "sd_equal": verdict.sd_equal,
        "conjecture": verdict.status is Status.SD_EQUAL_CONJECTURAL,
        "notes": list(verdict.notes),
    }
    if verdict.case_row is not None:
        record["case_row"] = case_row_record(verdict.case_row)
    return record


def _stats(report: CollisionReport) -> Record:
    return {
        "enumerated": report.enumerated,
        "buckets": report.buckets,
        "comparisons": report.comparisons,
    }


def collision_report_record(report: CollisionReport, include_multidegrees: bool = False) -> Record:
    """Cuerpo comparable del informe; shards y tiempo quedan fuera."""
    record = {
        "search": report.spec.echo(),
        "pairs": [
            {"a": pair.a.label, "b": pair.b.label, "sullivan": sullivan_record(pair.sullivan)}
            for pair in report.pairs
        ],
        "stats": _stats(report),
        "complete": True,
        "disclaimer": report.disclaimer,
    }
    if include_multidegrees:
        record["multidegrees"] = [md.label for md in report.multidegrees]
    return record


def aborted_search_record(spec: SearchSpec, exc: EnumerationLimitExceeded) -> Record:
    return {
        "search": spec.echo(),
        "pairs": [],
        "stats": {"enumerated": exc.enumerated, "limit": exc.limit},
        "complete": False,
        "error": str(exc),
    }


def derivation_report_record(report: DerivationReport) -> Record:
    return {
        "steps": [
            {
                "key": step.key,
                "title": step.title,
                "citation": step.citation,
                "status": step.status.value,
                "detail": step.detail,
                "result": step.result,
            }
            for step in report.steps
        ],
        "cp1_stable_group": report.cp1_stable_group.render() if report.cp1_stable_group else None,
        "final_group": report.final_group.render() if report.final_group else None,
        "counterfactual": report.counterfactual,
        "passed": report.passed,
        "ledger": report.ledger_source,
    }


def dumps(record: Mapping[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, indent=2, ensure_ascii=False)


def _flatten(prefix: str, value: Any, rows: List[Tuple[str, str]]) -> None:
    if isinstance(value, Mapping):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], rows)
    elif isinstance(value, list) and any(isinstance(v, (Mapping, list)) for v in value):
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, rows)
    elif isinstance(value, list):
        rows.append((prefix, ", ".join(str(v) for v in value)))
    elif value is None:
        rows.append((prefix, "-"))
    elif isinstance(value, bool):
        rows.append((prefix, "sí" if value else "no"))
    else:
        rows.append((prefix, str(value)))


def render_table(record: Mapping[str, Any]) -> str:
    """Tabla de texto plano clave/valor; el contrato estable es el JSON."""
    rows: List[Tuple[str, str]] = []
    _flatten("", record, rows)
    width = max((len(key) for key, _ in rows), default=0)
    return "\n".join(f"{key.ljust(width)}  {value}" for key, value in rows)

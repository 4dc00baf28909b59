"""
Text and JSON renderings of families, computed tables, condition systems,
verdicts and the theorem audit.

Text output is line oriented. JSON documents are dumped with sorted keys and
two-space indentation, so equal inputs always give byte-identical output.
"""
import json
from typing import Dict, List, Optional, Sequence, Tuple, Union

from liecodazzi.config import REPORT_SCHEMA
from liecodazzi.data_classes.data_classes import (
    AuditReport,
    AuditRow,
    Connection,
    DiscrepancyEntry,
    FrameVector,
    LieAlgebra,
    Point,
    PolySystem,
    Status,
    Verdict,
)
from liecodazzi.exceptions import UsageError
from liecodazzi.liealg.liealg import PAIRS
from liecodazzi.poly.poly import Polynomial, render, to_json
from liecodazzi.tensorcalc.tensorcalc import (
    cov_deriv_02,
    curvature,
    ricci,
    symmetrize,
    torsion,
)

Value = Union[Polynomial, FrameVector]
Entry = Tuple[str, Value]

OBJECTS = (
    "connection",
    "curvature",
    "ricci",
    "ricci-sym",
    "torsion",
    "nabla-ricci-sym",
)


def dumps(document: Dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True)


def vector_text(vector: FrameVector, unicode: bool = False) -> str:
    """Linear combination of the frame, e.g. a*e1-(a+b)*e3."""
    terms = []
    for k, component in enumerate(vector.components):
        if not component:
            continue
        text = render(component, unicode)
        basis = f"e{k + 1}"
        if text == "1":
            term = basis
        elif text == "-1":
            term = "-" + basis
        elif text.startswith("-("):
            term = f"{text}*{basis}"
        elif "+" in text or "-" in text[1:]:
            term = f"({text})*{basis}"
        else:
            term = f"{text}*{basis}"
        terms.append(term)
    if not terms:
        return "0"
    return "".join(t if i == 0 or t.startswith("-") else "+" + t for i, t in enumerate(terms))


def value_text(value: Value, unicode: bool = False) -> str:
    if isinstance(value, FrameVector):
        return vector_text(value, unicode)
    return render(value, unicode)


def polynomial_json(p: Polynomial) -> Dict:
    return {"text": render(p), "terms": to_json(p)}


def value_json(value: Value):
    if isinstance(value, FrameVector):
        return [polynomial_json(component) for component in value.components]
    return polynomial_json(value)


def point_json(point: Optional[Point]) -> Optional[Dict[str, str]]:
    if point is None:
        return None
    return {name: str(value) for name, value in sorted(point.items())}


def _case_json(algebra: LieAlgebra) -> Dict:
    case = {"family": algebra.family}
    if algebra.eta is not None:
        case["eta"] = algebra.eta
    return case


def _heading(algebra: LieAlgebra) -> str:
    if algebra.eta is None:
        return algebra.family
    return f"{algebra.family} (eta={algebra.eta:+d})"


# Families


def describe_family(algebra: LieAlgebra) -> Dict:
    description = _case_json(algebra)
    description["brackets"] = {
        f"e{i + 1}e{j + 1}": [render(c) for c in algebra.structure[(i, j)].components]
        for i, j in PAIRS
    }
    description["parameters"] = list(algebra.parameters)
    description["equalities"] = [render(p) for p in algebra.constraints.equalities]
    description["inequations"] = [render(p) for p in algebra.constraints.inequations]
    return description


def family_text(algebra: LieAlgebra, unicode: bool = False) -> str:
    lines = [_heading(algebra)]
    for i, j in PAIRS:
        bracket = vector_text(algebra.structure[(i, j)], unicode)
        lines.append(f"  [e{i + 1},e{j + 1}] = {bracket}")
    constraints = [f"{render(p, unicode)} = 0" for p in algebra.constraints.equalities]
    constraints += [f"{render(p, unicode)} != 0" for p in algebra.constraints.inequations]
    lines.append("  constraints: " + (", ".join(constraints) or "none"))
    return "\n".join(lines)


def family_listing(algebras: Sequence[LieAlgebra], unicode: bool = False) -> str:
    return "\n\n".join(family_text(algebra, unicode) for algebra in algebras)


def family_listing_json(algebras: Sequence[LieAlgebra]) -> Dict:
    return {"schema": REPORT_SCHEMA, "families": [describe_family(a) for a in algebras]}


# Computed objects


def object_entries(connection: Connection, name: str) -> List[Entry]:
    """Named entries of one computed table, row-major over frame indices."""
    if name == "connection":
        return [
            (f"nabla(e{i + 1},e{j + 1})", connection.gamma[i][j])
            for i in range(3)
            for j in range(3)
        ]
    if name == "curvature":
        r = curvature(connection)
        return [
            (f"R(e{i + 1},e{j + 1})e{k + 1}", r.value(i, j, k))
            for i, j in PAIRS
            for k in range(3)
        ]
    if name in ("ricci", "ricci-sym"):
        rho = ricci(curvature(connection))
        if name == "ricci-sym":
            rho = symmetrize(rho)
        return [
            (f"rho(e{i + 1},e{j + 1})", rho.value(i, j))
            for i in range(3)
            for j in range(3)
        ]
    if name == "torsion":
        t = torsion(connection)
        return [(f"T(e{i + 1},e{j + 1})", t.value(i, j)) for i, j in PAIRS]
    if name == "nabla-ricci-sym":
        nabla = cov_deriv_02(connection, symmetrize(ricci(curvature(connection))))
        return [
            (f"(nabla_e{i + 1} rho)(e{j + 1},e{k + 1})", nabla.value(i, j, k))
            for i in range(3)
            for j in range(3)
            for k in range(3)
        ]
    raise UsageError(f"unknown object {name!r}; expected one of {', '.join(OBJECTS)}")


def object_text(connection: Connection, name: str, unicode: bool = False) -> str:
    heading = f"{_heading(connection.algebra)} {connection.kind.value} {name}"
    lines = [heading]
    lines += [f"  {entry} = {value_text(value, unicode)}" for entry, value in object_entries(connection, name)]
    return "\n".join(lines)


def object_json(connection: Connection, name: str) -> Dict:
    document = _case_json(connection.algebra)
    document.update(
        schema=REPORT_SCHEMA,
        connection=connection.kind.value,
        object=name,
        entries=[
            {"entry": entry, "value": value_json(value)}
            for entry, value in object_entries(connection, name)
        ],
    )
    return document


# Systems and verdicts


def label_text(label: Tuple[int, int, int]) -> str:
    a, b, j = label
    return f"f(e{a},e{b},e{j})"


def system_text(system: PolySystem, unicode: bool = False) -> str:
    lines = [system.case_id.text()]
    lines += [f"  {label_text(label)} = {render(value, unicode)}" for label, value in system.entries]
    return "\n".join(lines)


def system_json(system: PolySystem) -> Dict:
    return {
        "schema": REPORT_SCHEMA,
        "case_id": system.case_id.text(),
        "entries": [
            {"label": list(label), "value": polynomial_json(value)}
            for label, value in system.entries
        ],
    }


def verdict_text(verdict: Verdict, unicode: bool = False) -> str:
    lines = [
        f"case: {verdict.case_id.text()}",
        f"status: {verdict.status.value}",
    ]
    if verdict.explanation:
        lines.append(f"explanation: {verdict.explanation}")
    if verdict.trials:
        lines.append(f"violations: {verdict.violations}/{verdict.trials}")
    if verdict.paper_claim:
        lines.append(f"paper claim: {verdict.paper_claim}")
        lines.append(f"recomputed: {verdict.recomputed_claim}")
    for label, value in verdict.residuals:
        lines.append(f"  residual {label_text(label)} = {render(value, unicode)}")
    if verdict.witness is not None:
        witness = ", ".join(f"{name}={value}" for name, value in point_json(verdict.witness).items())
        lines.append(f"witness: {witness}")
    return "\n".join(lines)


def verdict_json(verdict: Verdict) -> Dict:
    document = {
        "case_id": verdict.case_id.text(),
        "status": verdict.status.value,
        "explanation": verdict.explanation,
        "residual_labels": [list(label) for label in verdict.residual_labels],
        "residuals": [render(value) for _, value in verdict.residuals],
    }
    if verdict.case_id.eta is not None:
        document["eta"] = verdict.case_id.eta
    if verdict.witness is not None:
        document["witness_point"] = point_json(verdict.witness)
    if verdict.trials:
        document["trials"] = verdict.trials
        document["violations"] = verdict.violations
    if verdict.paper_claim:
        document["paper_claim"] = verdict.paper_claim
        document["recomputed_claim"] = verdict.recomputed_claim
    return document


# Audit


def _row_residual_labels(row: AuditRow) -> List[List[int]]:
    labels = []
    for verdict in row.verdicts:
        for label in verdict.residual_labels:
            if list(label) not in labels:
                labels.append(list(label))
    return labels


def _row_witness(row: AuditRow) -> Optional[Point]:
    return next((v.witness for v in row.verdicts if v.witness is not None), None)


def register_entry_json(entry: DiscrepancyEntry) -> Dict:
    return {
        "location": entry.location,
        "printed": entry.printed,
        "recomputed": entry.recomputed,
        "severity": entry.severity.value,
    }


def audit_row_json(row: AuditRow) -> Dict:
    document = {
        "case_id": row.case_id,
        "paper_claim": row.paper_claim,
        "recomputed_status": row.status.value,
        "residual_labels": _row_residual_labels(row),
        "branches": [verdict_json(verdict) for verdict in row.verdicts],
        "discrepancies": [
            verdict_json(verdict)
            for verdict in row.verdicts
            if verdict.status is Status.PAPER_DISCREPANCY
        ],
    }
    witness = _row_witness(row)
    if witness is not None:
        document["witness_point"] = point_json(witness)
    return document


def audit_json(report: AuditReport) -> Dict:
    return {
        "schema": REPORT_SCHEMA,
        "seed": report.seed,
        "trials": report.trials,
        "rows": [audit_row_json(row) for row in report.rows],
        "register": [register_entry_json(entry) for entry in report.register],
    }


def audit_table(report: AuditReport) -> str:
    width = max(len(row.case_id) for row in report.rows) if report.rows else 0
    lines = [f"{'case':<{width}}  {'status':<18}  paper claim"]
    for row in report.rows:
        lines.append(f"{row.case_id:<{width}}  {row.status.value:<18}  {row.paper_claim}")
        if len({v.status for v in row.verdicts}) > 1:
            for verdict in row.verdicts:
                lines.append(f"{'':<{width}}    eta={verdict.case_id.eta:+d}: {verdict.status.value}")
    lines.append("")
    lines.append(f"discrepancy register ({len(report.register)} entries)")
    for entry in report.register:
        lines.append(
            f"  [{entry.severity.value}] {entry.location}: "
            f"printed {entry.printed}; recomputed {entry.recomputed}"
        )
    return "\n".join(lines)

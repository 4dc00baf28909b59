"""
Theorem audit: every encoded classification claim is re-derived from the
structure constants, and every transcribed lemma table is compared entry by
entry against recomputation.
"""
import json
import logging
import os
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from liecodazzi.classify.classify import (
    UNRESTRICTED,
    build_system,
    check_on_family,
    connection_for,
    safe_sample_necessity,
    sample_on_family,
    solution_family,
    violated_labels,
)
from liecodazzi.config import DEFAULT_SEED, DEFAULT_TRIALS
from liecodazzi.connection.connection import connection_kind, definitions_for
from liecodazzi.data_classes.data_classes import (
    AuditReport,
    AuditRow,
    CaseId,
    ConnectionKind,
    DiscrepancyEntry,
    DiscrepancyRegister,
    FrameVector,
    Point,
    PolySystem,
    Severity,
    SolutionFamily,
    Status,
    Structure,
    Verdict,
)
from liecodazzi.exceptions import ConstraintViolation, SamplerStarvation, UsageError
from liecodazzi.liealg.liealg import ETAS, make_group
from liecodazzi.poly.poly import ZERO, parse, render
from liecodazzi.sampling.sampling import PointSampler
from liecodazzi.tensorcalc.tensorcalc import (
    cov_deriv_02,
    curvature,
    ricci,
    symmetric_ricci,
    torsion,
)

logger = logging.getLogger(__name__)

AUDIT_DATA = os.path.join(os.path.dirname(os.path.dirname(__file__)), "audit_data")
CLAIMS_FILE = os.path.join(AUDIT_DATA, "claims.jsonl")
PRINTED_TABLES_FILE = os.path.join(AUDIT_DATA, "printed_tables.jsonl")

CONNECTION_LABELS = {
    ConnectionKind.LEVI_CIVITA: "Levi-Civita",
    ConnectionKind.BOTT: "Bott",
    ConnectionKind.CANONICAL: "canonical",
    ConnectionKind.KOBAYASHI_NOMIZU: "Kobayashi-Nomizu",
}
QUANTITY_LABELS = {
    "connection": "connection",
    "curvature": "curvature",
    "ricci": "Ricci",
    "ricci-sym": "symmetrized Ricci",
    "nabla-ricci-sym": "symmetrized Ricci derivative",
    "torsion": "torsion",
}
# Printed derivative tables list only some entries; the rest are not compared.
PARTIAL_QUANTITIES = ("nabla-ricci-sym",)
STRUCTURE_LABELS = {
    Structure.CODAZZI: "Codazzi",
    Structure.QUASISTAT: "quasi-statistical",
}
HOLDING = (Status.HOLDS_ALWAYS, Status.HOLDS_ON_FAMILY)


def read_jsonl(filename: str) -> List[Dict]:
    with open(filename, encoding="utf-8") as file:
        return [json.loads(l.rstrip("\n")) for l in file if l.strip()]


def load_claims(filename: str = CLAIMS_FILE) -> List[Dict]:
    return read_jsonl(filename)


def load_printed_tables(filename: str = PRINTED_TABLES_FILE) -> List[Dict]:
    return read_jsonl(filename)


def etas_for(family: str) -> Tuple[Optional[int], ...]:
    return ETAS if family == "G4" else (None,)


def case_seed(seed: int, case_id: CaseId) -> str:
    return f"{seed}:{case_id.family}:{case_id.eta}:{case_id.connection.value}:{case_id.structure.value}"


def _families(records: Sequence[Mapping], eta: Optional[int]) -> List[SolutionFamily]:
    return [
        solution_family(
            record.get("assignment", {}),
            record.get("inequations", ()),
            record.get("relations", ()),
            eta=eta,
        )
        for record in records
    ]


def claim_text(record: Mapping) -> str:
    if record["claim"] == "always":
        return "holds always"
    if record["claim"] == "never":
        return "never holds"
    return "holds iff " + " or ".join(_family_record_text(r) for r in record["families"])


def _family_record_text(record: Mapping) -> str:
    parts = [f"{name}={value}" for name, value in record.get("assignment", {}).items()]
    parts += [f"{value}=0" for value in record.get("relations", ())]
    parts += [f"{value}!=0" for value in record.get("inequations", ())]
    return ", ".join(parts)


def _point_text(point: Optional[Point]) -> str:
    if point is None:
        return "-"
    return ", ".join(f"{name}={value}" for name, value in sorted(point.items()))


def _violating_point(system: PolySystem, family: SolutionFamily, trials: int, seed: str) -> Optional[Point]:
    sampler = PointSampler(seed)
    try:
        for _ in range(trials):
            point = sampler.draw(
                system.parameters,
                equalities=tuple(system.constraints.equalities) + family.relations,
                inequations=tuple(system.constraints.inequations) + family.extra_inequations,
                assignment=family.mapping,
            )
            if violated_labels(system, point):
                return point
    except SamplerStarvation:
        return None
    return None


def _family_point(system: PolySystem, family: SolutionFamily, seed: str) -> Optional[Point]:
    try:
        return sample_on_family(system, family, 1, seed)[0]
    except SamplerStarvation:
        return None


def _holds_on(system: PolySystem, family: SolutionFamily) -> Tuple[bool, Verdict]:
    try:
        verdict = check_on_family(system, family)
    except ConstraintViolation as error:
        verdict = Verdict(
            case_id=system.case_id,
            status=Status.FAILS_ON_FAMILY,
            explanation=str(error),
        )
    return verdict.status in HOLDING, verdict


def audit_case(record: Mapping, eta: Optional[int], trials: int, seed: int) -> Verdict:
    """Verdict for one claim record on one eta branch."""
    kind = connection_kind(record["connection"])
    structure = Structure(record["structure"])
    algebra = make_group(record["family"], eta)
    system = build_system(algebra, kind, structure)
    seed_text = case_seed(seed, system.case_id)
    paper_claim = claim_text(record)
    claim = record["claim"]

    if claim == "always":
        holds, verdict = _holds_on(system, UNRESTRICTED)
        if holds:
            return Verdict(
                case_id=system.case_id,
                status=Status.HOLDS_ALWAYS,
                explanation=verdict.explanation,
                paper_claim=paper_claim,
                recomputed_claim="holds always",
            )
        return Verdict(
            case_id=system.case_id,
            status=Status.PAPER_DISCREPANCY,
            witness=_violating_point(system, UNRESTRICTED, trials, seed_text),
            residuals=verdict.residuals,
            explanation=verdict.explanation,
            paper_claim=paper_claim,
            recomputed_claim=f"{len(verdict.residuals)} entries are not identically zero",
        )

    families = _families(record.get("families", ()), eta)
    probes = _families(record.get("probes", ()), eta)
    conflicts, residuals, witness = [], (), None

    for family in families:
        holds, verdict = _holds_on(system, family)
        if not holds:
            conflicts.append(f"fails on {family.text}")
            residuals = residuals or verdict.residuals
            witness = witness or _violating_point(system, family, trials, seed_text)
    for probe in probes:
        holds, _ = _holds_on(system, probe)
        if holds:
            conflicts.append(f"holds on {probe.text}")
            residuals = residuals or system.nonzero()
            witness = witness or _family_point(system, probe, seed_text)

    necessity = safe_sample_necessity(system, families, trials, seed_text)
    if necessity is not None and necessity.status is Status.HOLDS_OFF_FAMILY:
        conflicts.append(f"also holds at {_point_text(necessity.witness)}")
        witness = witness or necessity.witness
    counts = dict(
        trials=necessity.trials if necessity else 0,
        violations=necessity.violations if necessity else 0,
    )

    if conflicts:
        return Verdict(
            case_id=system.case_id,
            status=Status.PAPER_DISCREPANCY,
            witness=witness,
            residuals=residuals or system.nonzero(),
            explanation="; ".join(conflicts),
            paper_claim=paper_claim,
            recomputed_claim="; ".join(conflicts),
            **counts,
        )
    if claim == "never":
        return Verdict(
            case_id=system.case_id,
            status=Status.NEVER_HOLDS,
            witness=necessity.witness if necessity else None,
            residuals=system.nonzero(),
            explanation=necessity.explanation if necessity else "no admissible point",
            paper_claim=paper_claim,
            recomputed_claim="never holds",
            **counts,
        )
    return Verdict(
        case_id=system.case_id,
        status=Status.HOLDS_ON_FAMILY,
        explanation="every claimed family holds and every sampled point outside them fails",
        paper_claim=paper_claim,
        recomputed_claim=paper_claim,
        **counts,
    )


def _row_status(verdicts: Sequence[Verdict]) -> Status:
    statuses = {verdict.status for verdict in verdicts}
    if Status.PAPER_DISCREPANCY in statuses or len(statuses) > 1:
        return Status.PAPER_DISCREPANCY
    return statuses.pop()


def _location(kind: ConnectionKind, quantity: str, family: str, eta: Optional[int], entry: str) -> str:
    branch = "" if eta is None else f" (eta={eta:+d})"
    return f"{CONNECTION_LABELS[kind]} {QUANTITY_LABELS[quantity]} table, {family}{branch}, {entry}"


def _vector_text(vector: FrameVector) -> str:
    return "[" + ", ".join(render(component) for component in vector.components) + "]"


def _recomputed_entries(record: Mapping, eta: Optional[int]) -> Iterator[Tuple[str, str, object]]:
    """Yield (key, entry name, recomputed value) for every entry of one table."""
    kind = connection_kind(record["connection"])
    connection = connection_for(make_group(record["family"], eta), kind)
    quantity = record["quantity"]
    if quantity == "connection":
        for i in range(3):
            for j in range(3):
                yield f"{i + 1},{j + 1}", f"nabla(e{i + 1},e{j + 1})", connection.gamma[i][j]
    elif quantity == "curvature":
        r = curvature(connection)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            for k in range(3):
                yield (
                    f"{i + 1},{j + 1},{k + 1}",
                    f"R(e{i + 1},e{j + 1})e{k + 1}",
                    r.value(i, j, k),
                )
    elif quantity == "ricci":
        rho = ricci(curvature(connection))
        for i in range(3):
            for j in range(3):
                yield f"{i + 1},{j + 1}", f"rho(e{i + 1},e{j + 1})", rho.value(i, j)
    elif quantity == "nabla-ricci-sym":
        nabla = cov_deriv_02(connection, symmetric_ricci(connection))
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    yield (
                        f"{i + 1},{j + 1},{k + 1}",
                        f"(nabla_e{i + 1} rho)(e{j + 1},e{k + 1})",
                        nabla.value(i, j, k),
                    )
    elif quantity == "ricci-sym":
        omega = symmetric_ricci(connection)
        for i in range(3):
            for j in range(i, 3):
                yield f"{i + 1},{j + 1}", f"rho(e{i + 1},e{j + 1})", omega.value(i, j)
    elif quantity == "torsion":
        tensor = torsion(connection)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            yield f"{i + 1},{j + 1}", f"T(e{i + 1},e{j + 1})", tensor.value(i, j)
    else:
        raise UsageError(f"unknown printed quantity {quantity!r}")


def compare_printed_table(record: Mapping, eta: Optional[int]) -> List[DiscrepancyEntry]:
    kind = connection_kind(record["connection"])
    definitions = definitions_for(eta)
    printed = record.get("entries", {})
    garbled = record.get("garbled", {})
    partial = record["quantity"] in PARTIAL_QUANTITIES
    entries = []
    for key, name, value in _recomputed_entries(record, eta):
        if partial and key not in printed and key not in garbled:
            continue
        location = _location(kind, record["quantity"], record["family"], eta, name)
        recomputed = _vector_text(value) if isinstance(value, FrameVector) else render(value)
        if key in garbled:
            entries.append(
                DiscrepancyEntry(location, garbled[key], recomputed, Severity.TYPO_SUSPECTED)
            )
            continue
        text = printed.get(key)
        if isinstance(value, FrameVector):
            components = text or ["0", "0", "0"]
            expected = FrameVector(
                tuple(parse(c, eta=eta, definitions=definitions) for c in components)
            )
            matches = expected == value
            printed_text = _vector_text(expected)
        else:
            expected = parse(text, eta=eta, definitions=definitions) if text else ZERO
            matches = expected == value
            printed_text = render(expected)
        if not matches:
            entries.append(
                DiscrepancyEntry(location, printed_text, recomputed, Severity.TYPO_SUSPECTED)
            )
    return entries


def compare_printed_tables(records: Optional[Sequence[Mapping]] = None) -> List[DiscrepancyEntry]:
    records = load_printed_tables() if records is None else records
    entries = []
    for record in records:
        for eta in etas_for(record["family"]):
            entries.extend(compare_printed_table(record, eta))
    return entries


def verify_paper_theorems(
    trials_per_case: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED
) -> AuditReport:
    if trials_per_case < 1:
        raise UsageError("trials must be at least 1")
    register = DiscrepancyRegister()
    for entry in compare_printed_tables():
        logger.warning("table mismatch at %s", entry.location)
        register.append(entry)

    rows = []
    for record in load_claims():
        verdicts = tuple(
            audit_case(record, eta, trials_per_case, seed)
            for eta in etas_for(record["family"])
        )
        status = _row_status(verdicts)
        row = AuditRow(
            family=record["family"],
            connection=connection_kind(record["connection"]),
            structure=Structure(record["structure"]),
            paper_claim=claim_text(record),
            status=status,
            verdicts=verdicts,
        )
        logger.info("%s: %s", row.case_id, status.value)
        for verdict in verdicts:
            if verdict.status is Status.PAPER_DISCREPANCY:
                entry = DiscrepancyEntry(
                    location=_theorem_location(verdict.case_id),
                    printed=verdict.paper_claim,
                    recomputed=verdict.recomputed_claim,
                    severity=Severity.VERDICT_CONFLICT,
                )
                logger.warning("verdict conflict at %s", entry.location)
                register.append(entry)
        rows.append(row)
    return AuditReport(tuple(rows), register, seed, trials_per_case)


def _theorem_location(case_id: CaseId) -> str:
    branch = "" if case_id.eta is None else f" (eta={case_id.eta:+d})"
    return (
        f"{STRUCTURE_LABELS[case_id.structure]} classification, "
        f"{CONNECTION_LABELS[case_id.connection]} connection, {case_id.family}{branch}"
    )

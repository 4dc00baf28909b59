from collections import Counter, namedtuple
import json

import pytest

from liecodazzi.audit.audit import (
    audit_case,
    case_seed,
    claim_text,
    compare_printed_table,
    compare_printed_tables,
    etas_for,
    load_claims,
    load_printed_tables,
    verify_paper_theorems,
)
from liecodazzi.config import DEFAULT_SEED, DEFAULT_TRIALS
from liecodazzi.connection.connection import connection_kind
from liecodazzi.data_classes.data_classes import (
    CaseId,
    ConnectionKind,
    Severity,
    Status,
    Structure,
)
from liecodazzi.exceptions import UsageError
from liecodazzi.report.report import audit_json, dumps

TableCase = namedtuple("TableCase", ["family", "connection", "quantity"])

ROW_STATUSES = {
    Status.HOLDS_ALWAYS,
    Status.HOLDS_ON_FAMILY,
    Status.NEVER_HOLDS,
    Status.PAPER_DISCREPANCY,
}


def claim(family, connection, structure):
    for record in load_claims():
        if (record["family"], record["connection"], record["structure"]) == (family, connection, structure):
            return record
    raise LookupError(family)


def printed_table(family, connection, quantity):
    for record in load_printed_tables():
        if (record["family"], record["connection"], record["quantity"]) == (family, connection, quantity):
            return record
    raise LookupError(family)


def test_claims_cover_every_case():
    records = load_claims()
    keys = {(r["family"], r["connection"], r["structure"]) for r in records}
    assert len(records) == len(keys) == 42


def test_printed_tables_load():
    records = load_printed_tables()
    assert len(records) == 97
    counts = Counter(r["quantity"] for r in records)
    assert counts == {
        "connection": 21,
        "curvature": 7,
        "ricci": 7,
        "ricci-sym": 21,
        "nabla-ricci-sym": 20,
        "torsion": 21,
    }


def test_etas_for():
    assert etas_for("G4") == (1, -1)
    assert etas_for("G6") == (None,)


def test_case_seed():
    case_id = CaseId("G4", -1, ConnectionKind.BOTT, Structure.CODAZZI)
    assert case_seed(42, case_id) == "42:G4:-1:bott:codazzi"


def test_claim_text():
    assert claim_text({"claim": "always"}) == "holds always"
    assert claim_text({"claim": "never"}) == "never holds"
    record = {"claim": "families", "families": [{"assignment": {"a": 0}, "inequations": ["d"]}, {"assignment": {"b": 0}}]}
    assert claim_text(record) == "holds iff a=0, d!=0 or b=0"


class TestAuditCase:
    def test_holds_always(self):
        verdict = audit_case(claim("G3", "bott", "codazzi"), None, trials=5, seed=42)
        assert verdict.status is Status.HOLDS_ALWAYS

    def test_never_holds(self):
        verdict = audit_case(claim("G1", "bott", "codazzi"), None, trials=5, seed=42)
        assert verdict.status is Status.NEVER_HOLDS
        assert verdict.violations == verdict.trials == 5
        assert verdict.explanation

    def test_suspected_counterexample_is_reported(self):
        verdict = audit_case(claim("G2", "bott", "codazzi"), None, trials=5, seed=42)

        assert verdict.status is Status.PAPER_DISCREPANCY
        assert verdict.paper_claim == "never holds"
        assert "holds on a=0, b=0" in verdict.recomputed_claim
        assert verdict.witness["a"] == verdict.witness["b"] == 0
        assert verdict.witness["g"] != 0

    @pytest.mark.parametrize("eta", [1, -1])
    def test_g4_branches(self, eta):
        verdict = audit_case(claim("G4", "bott", "codazzi"), eta, trials=5, seed=42)
        assert verdict.case_id.eta == eta
        assert verdict.status in (Status.HOLDS_ON_FAMILY, Status.PAPER_DISCREPANCY)

    def test_wrong_always_claim(self):
        record = {"family": "G1", "connection": "bott", "structure": "codazzi", "claim": "always"}

        verdict = audit_case(record, None, trials=5, seed=1)

        assert verdict.status is Status.PAPER_DISCREPANCY
        assert verdict.residuals
        assert verdict.witness is not None

    def test_too_narrow_family_claim(self):
        record = {
            "family": "G3",
            "connection": "bott",
            "structure": "codazzi",
            "claim": "families",
            "families": [{"assignment": {"a": 0}}],
        }

        verdict = audit_case(record, None, trials=5, seed=1)

        assert verdict.status is Status.PAPER_DISCREPANCY
        assert "also holds at" in verdict.recomputed_claim
        assert verdict.witness["a"] != 0


class TestPrintedTables:
    def test_matching_table(self):
        record = {"family": "G1", "connection": "bott", "quantity": "torsion", "entries": {"1,2": ["0", "0", "b"]}}
        assert compare_printed_table(record, None) == []

    def test_mismatch(self):
        record = {"family": "G1", "connection": "bott", "quantity": "torsion", "entries": {"1,2": ["0", "0", "a"]}}

        entries = compare_printed_table(record, None)

        assert len(entries) == 1
        assert entries[0].location == "Bott torsion table, G1, T(e1,e2)"
        assert entries[0].printed == "[0, 0, a]"
        assert entries[0].recomputed == "[0, 0, b]"
        assert entries[0].severity is Severity.TYPO_SUSPECTED

    def test_garbled_entry_is_recorded_without_comparison(self):
        record = {
            "family": "G5",
            "connection": "kn",
            "quantity": "ricci-sym",
            "entries": {},
            "garbled": {"1,1": "\\frac{a}{2}(b"},
        }

        entries = compare_printed_table(record, None)

        assert [e.printed for e in entries] == ["\\frac{a}{2}(b"]
        assert entries[0].location == "Kobayashi-Nomizu symmetrized Ricci table, G5, rho(e1,e1)"

    def test_derived_constants_and_eta(self):
        record = {
            "family": "G3",
            "connection": "kn",
            "quantity": "connection",
            "entries": {"3,1": ["0", "m3-m1", "0"], "3,2": ["-(m2+m3)", "0", "0"]},
        }
        assert compare_printed_table(record, None) == []

    def test_unknown_quantity(self):
        record = {"family": "G1", "connection": "bott", "quantity": "weyl", "entries": {}}
        with pytest.raises(UsageError):
            compare_printed_table(record, None)

    def test_register_content(self):
        locations = [entry.location for entry in compare_printed_tables()]

        assert "Bott connection table, G3, nabla(e1,e3)" in locations
        assert "canonical symmetrized Ricci table, G4 (eta=+1), rho(e2,e3)" in locations
        assert "canonical symmetrized Ricci table, G4 (eta=-1), rho(e2,e3)" in locations
        assert "canonical symmetrized Ricci table, G7, rho(e2,e2)" in locations
        for prefix in (
            "Bott connection table, G1,",
            "Bott symmetrized Ricci table, G1,",
            "Bott torsion table, G1,",
        ):
            assert not any(location.startswith(prefix) for location in locations)

    def test_register_derivative_entry(self):
        location = "Bott symmetrized Ricci derivative table, G1, (nabla_e3 rho)(e2,e2)"

        entries = [e for e in compare_printed_tables() if e.location == location]

        assert len(entries) == 1
        assert entries[0].printed == "-2*a^2"
        assert entries[0].recomputed == "-2*a^3"

    @pytest.mark.parametrize(
        "case",
        [
            TableCase("G3", "bott", "curvature"),
            TableCase("G3", "bott", "ricci"),
            TableCase("G3", "bott", "nabla-ricci-sym"),
            TableCase("G5", "bott", "curvature"),
            TableCase("G5", "bott", "ricci"),
            TableCase("G5", "bott", "nabla-ricci-sym"),
            TableCase("G5", "canonical", "nabla-ricci-sym"),
        ],
    )
    def test_transcribed_table_matches(self, case):
        record = printed_table(*case)
        assert compare_printed_table(record, None) == []

    def test_curvature_mismatch(self):
        record = {
            "family": "G3",
            "connection": "bott",
            "quantity": "curvature",
            "entries": {"1,2,1": ["0", "a*g", "0"], "1,2,2": ["-a*g", "0", "0"]},
        }

        entries = compare_printed_table(record, None)

        assert [e.location for e in entries] == ["Bott curvature table, G3, R(e1,e2)e1"]
        assert entries[0].printed == "[0, a*g, 0]"
        assert entries[0].recomputed == "[0, b*g, 0]"

    def test_ricci_mismatch(self):
        record = {
            "family": "G3",
            "connection": "bott",
            "quantity": "ricci",
            "entries": {"1,1": "-b*g", "2,2": "-a*g", "3,3": "g"},
        }

        entries = compare_printed_table(record, None)

        assert [e.location for e in entries] == ["Bott Ricci table, G3, rho(e3,e3)"]
        assert entries[0].recomputed == "0"

    def test_derivative_table_compares_printed_keys_only(self):
        record = {"family": "G3", "connection": "bott", "quantity": "nabla-ricci-sym", "entries": {"3,1,2": "a"}}

        entries = compare_printed_table(record, None)

        assert [e.location for e in entries] == [
            "Bott symmetrized Ricci derivative table, G3, (nabla_e3 rho)(e1,e2)"
        ]
        assert entries[0].recomputed == "0"
        assert compare_printed_table(dict(record, entries={}), None) == []


@pytest.fixture(scope="module")
def report():
    return verify_paper_theorems(trials_per_case=DEFAULT_TRIALS, seed=DEFAULT_SEED)


def expected_statuses(record):
    if (record["family"], record["connection"], record["structure"]) == ("G2", "bott", "codazzi"):
        return {Status.PAPER_DISCREPANCY}
    if record["claim"] == "always":
        return {Status.HOLDS_ALWAYS}
    if record["claim"] == "never":
        return {Status.NEVER_HOLDS}
    return {Status.HOLDS_ALWAYS, Status.HOLDS_ON_FAMILY}


class TestVerifyPaperTheorems:
    def test_every_case_once(self, report):
        case_ids = [row.case_id for row in report.rows]
        assert len(case_ids) == len(set(case_ids)) == 42
        assert {row.status for row in report.rows} <= ROW_STATUSES

    def test_g4_has_two_branches(self, report):
        for row in report.rows:
            assert len(row.verdicts) == (2 if row.family == "G4" else 1)

    def test_known_rows(self, report):
        statuses = {row.case_id: row.status for row in report.rows}
        assert statuses["G3/bott/codazzi"] is Status.HOLDS_ALWAYS
        assert statuses["G5/bott/quasistat"] is Status.HOLDS_ALWAYS
        assert statuses["G1/bott/codazzi"] is Status.NEVER_HOLDS
        assert statuses["G2/bott/codazzi"] is Status.PAPER_DISCREPANCY

    def test_register(self, report):
        conflicts = [e for e in report.register if e.severity is Severity.VERDICT_CONFLICT]
        assert "Codazzi classification, Bott connection, G2" in [e.location for e in conflicts]
        assert report.has_discrepancies
        # table mismatches come first
        severities = [e.severity for e in report.register]
        assert severities == sorted(severities, key=lambda s: s is Severity.VERDICT_CONFLICT)

    @pytest.mark.parametrize(
        "record", load_claims(), ids=lambda r: f"{r['family']}/{r['connection']}/{r['structure']}"
    )
    def test_row_matches_claim(self, report, record):
        kind = connection_kind(record["connection"])

        row = next(
            row
            for row in report.rows
            if (row.family, row.connection, row.structure.value) == (record["family"], kind, record["structure"])
        )

        assert row.status in expected_statuses(record)

    def test_only_discrepancy_is_g2_bott_codazzi(self, report):
        rows = [row for row in report.rows if row.status is Status.PAPER_DISCREPANCY]

        assert [row.case_id for row in rows] == ["G2/bott/codazzi"]
        witness = next(v.witness for v in rows[0].verdicts if v.witness is not None)
        assert witness["a"] == witness["b"] == 0

    def test_json_is_deterministic(self):
        first = verify_paper_theorems(trials_per_case=3, seed=42)
        again = verify_paper_theorems(trials_per_case=3, seed=42)
        assert dumps(audit_json(first)) == dumps(audit_json(again))
        document = json.loads(dumps(audit_json(first)))
        assert document["schema"] == "1"
        assert len(document["rows"]) == 42

    def test_trials_must_be_positive(self):
        with pytest.raises(UsageError):
            verify_paper_theorems(trials_per_case=0)

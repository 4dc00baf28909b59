"""Symbolic tables evaluated at a point agree with the same tables built at that point."""
from collections import namedtuple
from itertools import product

import pytest

from liecodazzi.config import ORACLE_POINTS
from liecodazzi.connection.connection import build
from liecodazzi.data_classes.data_classes import ConnectionKind
from liecodazzi.liealg.liealg import ETAS, FAMILIES, instantiate, make_group
from liecodazzi.poly.poly import evaluate
from liecodazzi.sampling.sampling import PointSampler
from liecodazzi.tensorcalc.tensorcalc import curvature, symmetric_ricci, torsion

Case = namedtuple("Case", ["family", "eta", "kind"])

CASES = [
    Case(family, eta, kind)
    for family in FAMILIES
    for eta in (ETAS if family == "G4" else (None,))
    for kind in ConnectionKind
]


def case_id(case):
    branch = "" if case.eta is None else f"({case.eta:+d})"
    return f"{case.family}{branch}-{case.kind.value}"


def values(vector, point):
    return [evaluate(component, point) for component in vector.components]


def admissible_points(algebra, seed):
    sampler = PointSampler(seed=seed)
    return [
        sampler.draw(
            algebra.parameters,
            equalities=algebra.constraints.equalities,
            inequations=algebra.constraints.inequations,
        )
        for _ in range(ORACLE_POINTS)
    ]


@pytest.mark.parametrize("case", CASES, ids=case_id)
def test_tables_commute_with_evaluation(case):
    # Arrange
    algebra = make_group(case.family, case.eta)
    connection = build(algebra, case.kind)
    r = curvature(connection)
    rho = symmetric_ricci(connection)
    t = torsion(connection)

    for point in admissible_points(algebra, seed=case_id(case)):
        # Act
        numeric_connection = build(instantiate(algebra, point), case.kind)
        numeric_r = curvature(numeric_connection)
        numeric_rho = symmetric_ricci(numeric_connection)
        numeric_t = torsion(numeric_connection)

        # Assert
        for i, j in product(range(3), repeat=2):
            assert values(numeric_connection.gamma[i][j], point) == values(connection.gamma[i][j], point)
            assert evaluate(numeric_rho.value(i, j), point) == evaluate(rho.value(i, j), point)
            assert values(numeric_t.value(i, j), point) == values(t.value(i, j), point)
            for k in range(3):
                assert values(numeric_r.value(i, j, k), point) == values(r.value(i, j, k), point)

from collections import namedtuple

import pytest

from liecodazzi.connection.connection import (
    BASIS,
    apply,
    bott,
    build,
    canonical,
    connection_kind,
    derived_constants,
    kobayashi_nomizu,
    levi_civita,
    nabla_j,
    product_structure,
)
from liecodazzi.data_classes.data_classes import ConnectionKind, FrameVector
from liecodazzi.exceptions import UsageError
from liecodazzi.liealg.liealg import (
    FAMILIES,
    bracket,
    from_structure_constants,
    make_group,
    metric,
)
from liecodazzi.poly.poly import ALPHA, BETA, GAMMA, ONE, ZERO, parse

E1, E2, E3 = BASIS


def vector(*texts):
    return FrameVector(tuple(parse(text) for text in texts))


def all_groups():
    return [
        make_group(family, eta)
        for family in FAMILIES
        for eta in ((1, -1) if family == "G4" else (None,))
    ]


Case = namedtuple("Case", ["name", "kind"])


@pytest.mark.parametrize(
    "case",
    [
        Case("lc", ConnectionKind.LEVI_CIVITA),
        Case("Levi-Civita", ConnectionKind.LEVI_CIVITA),
        Case("bott", ConnectionKind.BOTT),
        Case("canonical", ConnectionKind.CANONICAL),
        Case("kn", ConnectionKind.KOBAYASHI_NOMIZU),
        Case("kobayashi_nomizu", ConnectionKind.KOBAYASHI_NOMIZU),
    ],
)
def test_connection_kind(case):
    assert connection_kind(case.name) is case.kind


def test_unknown_connection_kind():
    with pytest.raises(UsageError):
        connection_kind("weitzenbock")


class TestLeviCivita:
    @pytest.mark.parametrize("algebra", all_groups())
    def test_torsion_free_and_metric(self, algebra):
        lc = levi_civita(algebra)
        for i in range(3):
            for j in range(3):
                x, y = BASIS[i], BASIS[j]
                torsion = lc.gamma[i][j] - lc.gamma[j][i] - bracket(algebra, x, y)
                assert torsion.is_zero()
                for k in range(3):
                    z = BASIS[k]
                    # X g(Y,Z) = 0 on the frame
                    assert metric(lc.gamma[i][j], z) + metric(y, lc.gamma[i][k]) == ZERO

    def test_g1_first_row(self):
        lc = levi_civita(make_group("G1"))
        assert lc.gamma[0][0] == vector("0", "-a", "-a")


class TestBott:
    def test_g1_table(self):
        nabla = bott(make_group("G1"))
        assert nabla.gamma[0][0] == vector("0", "-a", "0")
        assert nabla.gamma[0][1] == vector("a", "0", "0")
        assert nabla.gamma[1][2] == vector("0", "0", "a")
        assert nabla.gamma[2][0] == vector("a", "b", "0")
        assert nabla.gamma[2][1] == vector("-b", "-a", "0")
        assert nabla.gamma[0][2].is_zero()
        assert nabla.gamma[2][2].is_zero()

    def test_g3_recomputed_entries(self):
        nabla = bott(make_group("G3"))
        assert nabla.gamma[0][2].is_zero()
        assert nabla.gamma[2][0] == FrameVector.of(ZERO, BETA, ZERO)
        assert nabla.gamma[2][1] == FrameVector.of(-ALPHA, ZERO, ZERO)

    def test_g5_table(self):
        nabla = bott(make_group("G5"))
        assert nabla.gamma[2][0] == vector("-a", "-b", "0")
        assert nabla.gamma[2][1] == vector("-g", "-d", "0")


class TestCanonical:
    def test_g1_table(self):
        nabla = canonical(make_group("G1"))
        assert nabla.gamma[2][0] == vector("0", "b/2", "0")
        assert nabla.gamma[2][1] == vector("-b/2", "0", "0")
        assert all(nabla.gamma[1][j].is_zero() for j in range(3))

    def test_g3_uses_derived_constant(self):
        m3 = derived_constants().m3
        nabla = canonical(make_group("G3"))
        assert nabla.gamma[2][0] == FrameVector.of(ZERO, m3, ZERO)

    def test_g5_table(self):
        nabla = canonical(make_group("G5"))
        assert nabla.gamma[2][0] == vector("0", "(g-b)/2", "0")

    @pytest.mark.parametrize("algebra", all_groups())
    def test_parallel_product_structure(self, algebra):
        """The canonical connection makes J parallel."""
        nabla = canonical(algebra)
        for x in BASIS:
            for y in BASIS:
                assert apply(nabla, x, product_structure(y)) == product_structure(apply(nabla, x, y))


@pytest.mark.parametrize("algebra", all_groups())
def test_kobayashi_nomizu_matches_bott(algebra):
    assert kobayashi_nomizu(algebra).gamma == bott(algebra).gamma


def test_g3_kobayashi_nomizu_in_derived_constants():
    constants = derived_constants()
    nabla = kobayashi_nomizu(make_group("G3"))
    assert nabla.gamma[2][0] == FrameVector.of(ZERO, constants.m3 - constants.m1, ZERO)
    assert nabla.gamma[2][1] == FrameVector.of(-ALPHA, ZERO, ZERO)


def test_derived_constants_need_eta_for_n():
    assert derived_constants().n1 is None
    assert derived_constants(eta=-1).n3 == parse("a/2-1")


def test_nabla_j():
    # J e1 = e1 and J e3 = -e3
    assert product_structure(E3) == FrameVector.of(ZERO, ZERO, -ONE)
    abelian = from_structure_constants({})
    assert nabla_j(abelian, E2, E1) == FrameVector.zero()
    g1 = make_group("G1")
    assert nabla_j(g1, E2, E1) == FrameVector.of(ZERO, ZERO, BETA)


@pytest.mark.parametrize("algebra", all_groups())
def test_nabla_j_anticommutes_with_j(algebra):
    # J^2 = 1, so (nabla_X J)J + J(nabla_X J) = 0
    lc = levi_civita(algebra)
    for x in BASIS:
        for y in BASIS:
            left = nabla_j(algebra, x, product_structure(y), lc)
            right = product_structure(nabla_j(algebra, x, y, lc))
            assert (left + right).is_zero()


def test_apply_is_bilinear():
    nabla = bott(make_group("G1"))
    x = FrameVector.of(ONE, ALPHA, ZERO)
    y = FrameVector.of(ZERO, ONE, GAMMA)
    expected = (
        nabla.gamma[0][1]
        + nabla.gamma[0][2].scaled(GAMMA)
        + nabla.gamma[1][1].scaled(ALPHA)
        + nabla.gamma[1][2].scaled(ALPHA * GAMMA)
    )
    assert apply(nabla, x, y) == expected


@pytest.mark.parametrize("kind", list(ConnectionKind))
def test_build_dispatch(kind):
    assert build(make_group("G2"), kind).kind is kind

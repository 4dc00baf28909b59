"""
Levi-Civita, Bott, canonical and Kobayashi-Nomizu connections on the
left-invariant frame.

All tables are built from the structure constants alone. Frame vectors are
constant-coefficient combinations of e1, e2, e3, so every connection is
bilinear over ring scalars in both slots.
"""
import logging
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Optional, Sequence

from liecodazzi.data_classes.data_classes import (
    Connection,
    ConnectionKind,
    DerivedConstants,
    FrameVector,
    LieAlgebra,
)
from liecodazzi.exceptions import UsageError
from liecodazzi.liealg.liealg import SIGNATURE, bracket, metric
from liecodazzi.poly.poly import ZERO, const, parse, scale

logger = logging.getLogger(__name__)

# Bott splitting: D = span{e1, e2}, D-perp = span{e3}.
D = (0, 1)
D_PERP = (2,)

KIND_ALIASES = {
    "lc": ConnectionKind.LEVI_CIVITA,
    "levi_civita": ConnectionKind.LEVI_CIVITA,
    "levi-civita": ConnectionKind.LEVI_CIVITA,
    "bott": ConnectionKind.BOTT,
    "b": ConnectionKind.BOTT,
    "canonical": ConnectionKind.CANONICAL,
    "c": ConnectionKind.CANONICAL,
    "kn": ConnectionKind.KOBAYASHI_NOMIZU,
    "k": ConnectionKind.KOBAYASHI_NOMIZU,
    "kobayashi_nomizu": ConnectionKind.KOBAYASHI_NOMIZU,
    "kobayashi-nomizu": ConnectionKind.KOBAYASHI_NOMIZU,
}

DERIVED_DEFINITIONS = {
    "m1": "(a-b-g)/2",
    "m2": "(a-b+g)/2",
    "m3": "(a+b-g)/2",
    "n1": "a/2+e-b",
    "n2": "a/2-e",
    "n3": "a/2+e",
}

BASIS = tuple(FrameVector.basis(k) for k in range(3))


def connection_kind(name: str) -> ConnectionKind:
    try:
        return KIND_ALIASES[name.strip().lower()]
    except KeyError:
        raise UsageError(
            f"unknown connection {name!r}; expected bott, canonical, kn or levi_civita"
        )


def derived_constants(eta: Optional[int] = None) -> DerivedConstants:
    values = {
        name: parse(text, eta=eta)
        for name, text in DERIVED_DEFINITIONS.items()
        if eta is not None or name.startswith("m")
    }
    return DerivedConstants(**values)


def definitions_for(eta: Optional[int]) -> Dict[str, str]:
    """Derived-constant names usable in polynomial text for a given eta."""
    if eta is None:
        return {name: text for name, text in DERIVED_DEFINITIONS.items() if name.startswith("m")}
    return dict(DERIVED_DEFINITIONS)


def product_structure(x: FrameVector) -> FrameVector:
    """J e1 = e1, J e2 = e2, J e3 = -e3."""
    return FrameVector((x[0], x[1], -x[2]))


def project(x: FrameVector, subspace: Sequence[int]) -> FrameVector:
    return FrameVector(tuple(x[k] if k in subspace else ZERO for k in range(3)))


def _connection(
    kind: ConnectionKind,
    algebra: LieAlgebra,
    entry: Callable[[int, int], FrameVector],
) -> Connection:
    gamma = tuple(tuple(entry(i, j) for j in range(3)) for i in range(3))
    return Connection(kind=kind, gamma=gamma, algebra=algebra)


def apply(connection: Connection, x: FrameVector, y: FrameVector) -> FrameVector:
    result = FrameVector.zero()
    for i, j in product(range(3), repeat=2):
        if x[i] and y[j]:
            result = result + connection.gamma[i][j].scaled(x[i] * y[j])
    return result


def levi_civita(algebra: LieAlgebra) -> Connection:
    """
    Koszul formula for left-invariant fields:
    2g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
    """

    def entry(i: int, j: int) -> FrameVector:
        x, y = BASIS[i], BASIS[j]
        components = []
        for k, z in enumerate(BASIS):
            koszul = (
                metric(bracket(algebra, x, y), z)
                - metric(bracket(algebra, y, z), x)
                + metric(bracket(algebra, z, x), y)
            )
            components.append(scale(Fraction(SIGNATURE[k], 2), koszul))
        return FrameVector(tuple(components))

    return _connection(ConnectionKind.LEVI_CIVITA, algebra, entry)


def bott(algebra: LieAlgebra, lc: Optional[Connection] = None) -> Connection:
    lc = lc or levi_civita(algebra)

    def entry(i: int, j: int) -> FrameVector:
        if i in D and j in D:
            return project(lc.gamma[i][j], D)
        if i in D_PERP and j in D:
            return project(algebra.bracket_of_basis(i, j), D)
        if i in D and j in D_PERP:
            return project(algebra.bracket_of_basis(i, j), D_PERP)
        return project(lc.gamma[i][j], D_PERP)

    return _connection(ConnectionKind.BOTT, algebra, entry)


def nabla_j(
    algebra: LieAlgebra,
    x: FrameVector,
    y: FrameVector,
    lc: Optional[Connection] = None,
) -> FrameVector:
    """(nabla_X J)Y = nabla_X(JY) - J(nabla_X Y) for the Levi-Civita connection."""
    lc = lc or levi_civita(algebra)
    return apply(lc, x, product_structure(y)) - product_structure(apply(lc, x, y))


def canonical(algebra: LieAlgebra, lc: Optional[Connection] = None) -> Connection:
    """nabla^c_X Y = nabla_X Y - 1/2 (nabla_X J)JY."""
    lc = lc or levi_civita(algebra)

    def entry(i: int, j: int) -> FrameVector:
        correction = nabla_j(algebra, BASIS[i], product_structure(BASIS[j]), lc)
        return lc.gamma[i][j] - correction.scaled(const(Fraction(1, 2)))

    return _connection(ConnectionKind.CANONICAL, algebra, entry)


def kobayashi_nomizu(
    algebra: LieAlgebra,
    lc: Optional[Connection] = None,
    canonical_connection: Optional[Connection] = None,
) -> Connection:
    """nabla^k_X Y = nabla^c_X Y - 1/4 [(nabla_Y J)JX - (nabla_JY J)X]."""
    lc = lc or levi_civita(algebra)
    canonical_connection = canonical_connection or canonical(algebra, lc)

    def entry(i: int, j: int) -> FrameVector:
        x, y = BASIS[i], BASIS[j]
        correction = nabla_j(algebra, y, product_structure(x), lc) - nabla_j(
            algebra, product_structure(y), x, lc
        )
        return canonical_connection.gamma[i][j] - correction.scaled(const(Fraction(1, 4)))

    return _connection(ConnectionKind.KOBAYASHI_NOMIZU, algebra, entry)


def build(algebra: LieAlgebra, kind: ConnectionKind) -> Connection:
    lc = levi_civita(algebra)
    if kind is ConnectionKind.LEVI_CIVITA:
        return lc
    if kind is ConnectionKind.BOTT:
        return bott(algebra, lc)
    if kind is ConnectionKind.CANONICAL:
        return canonical(algebra, lc)
    logger.debug("building Kobayashi-Nomizu connection for %s", algebra.family)
    return kobayashi_nomizu(algebra, lc)

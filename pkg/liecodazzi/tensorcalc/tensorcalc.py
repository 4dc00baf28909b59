"""
Curvature, Ricci, symmetrized Ricci, covariant derivative of (0,2)-tensors and
torsion for a connection on the left-invariant frame.
"""
from fractions import Fraction

from liecodazzi.connection.connection import BASIS, apply
from liecodazzi.data_classes.data_classes import (
    Connection,
    Curvature,
    Tensor02,
    Tensor03,
    TorsionTensor,
)
from liecodazzi.liealg.liealg import PAIRS, SIGNATURE, bracket, metric
from liecodazzi.poly.poly import ONE, ZERO, scale

# rho(X,Y) = -g(R(X,e1)Y,e1) - g(R(X,e2)Y,e2) + g(R(X,e3)Y,e3)
RICCI_WEIGHTS = (-1, -1, 1)


def metric_tensor() -> Tensor02:
    return Tensor02(
        tuple(
            tuple(ONE * SIGNATURE[i] if i == j else ZERO for j in range(3))
            for i in range(3)
        )
    )


def curvature(connection: Connection) -> Curvature:
    """R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z."""
    algebra = connection.algebra
    r = {}
    for i, j in PAIRS:
        x, y = BASIS[i], BASIS[j]
        commutator = bracket(algebra, x, y)
        r[(i, j)] = tuple(
            apply(connection, x, apply(connection, y, z))
            - apply(connection, y, apply(connection, x, z))
            - apply(connection, commutator, z)
            for z in BASIS
        )
    return Curvature(r)


def ricci(r: Curvature) -> Tensor02:
    def entry(i: int, j: int):
        total = ZERO
        for k, weight in enumerate(RICCI_WEIGHTS):
            total += weight * metric(r.value(i, k, j), BASIS[k])
        return total

    return Tensor02(tuple(tuple(entry(i, j) for j in range(3)) for i in range(3)))


def symmetrize(rho: Tensor02) -> Tensor02:
    half = Fraction(1, 2)
    return Tensor02(
        tuple(
            tuple(scale(half, rho.w[i][j] + rho.w[j][i]) for j in range(3))
            for i in range(3)
        )
    )


def cov_deriv_02(connection: Connection, omega: Tensor02) -> Tensor03:
    """
    (nabla_ei omega)(ej, ek) = -omega(nabla_ei ej, ek) - omega(ej, nabla_ei ek);
    the directional term vanishes since omega has constant frame components.
    """

    def entry(i: int, j: int, k: int):
        return -omega.apply(connection.gamma[i][j], BASIS[k]) - omega.apply(
            BASIS[j], connection.gamma[i][k]
        )

    return Tensor03(
        tuple(
            tuple(tuple(entry(i, j, k) for k in range(3)) for j in range(3))
            for i in range(3)
        )
    )


def torsion(connection: Connection) -> TorsionTensor:
    """T(X,Y) = nabla_X Y - nabla_Y X - [X,Y]."""
    algebra = connection.algebra
    return TorsionTensor(
        {
            (i, j): connection.gamma[i][j]
            - connection.gamma[j][i]
            - algebra.bracket_of_basis(i, j)
            for i, j in PAIRS
        }
    )


def symmetric_ricci(connection: Connection) -> Tensor02:
    return symmetrize(ricci(curvature(connection)))

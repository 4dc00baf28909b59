"""
The seven three-dimensional Lorentzian Lie algebra families and their metric.
"""
import logging
from fractions import Fraction
from itertools import product
from typing import Dict, Mapping, Optional

from liecodazzi.config import DEFAULT_SEED, JACOBI_POINTS
from liecodazzi.data_classes.data_classes import (
    ConstraintSet,
    FrameVector,
    JacobiReport,
    LieAlgebra,
    Pair,
)
from liecodazzi.exceptions import ConstraintViolation, UsageError
from liecodazzi.poly.poly import (
    ALPHA,
    BETA,
    DELTA,
    GAMMA,
    VARIABLES,
    ZERO,
    Polynomial,
    Scalar,
    const,
    evaluate,
    render,
    substitute,
)
from liecodazzi.sampling.sampling import PointSampler

logger = logging.getLogger(__name__)

FAMILIES = ("G1", "G2", "G3", "G4", "G5", "G6", "G7")
ETAS = (1, -1)
SIGNATURE = (1, 1, -1)
PAIRS = ((0, 1), (0, 2), (1, 2))

PARAMETERS = {
    "G1": ("a", "b"),
    "G2": ("a", "b", "g"),
    "G3": ("a", "b", "g"),
    "G4": ("a", "b"),
    "G5": VARIABLES,
    "G6": VARIABLES,
    "G7": VARIABLES,
}


def _vector(*components) -> FrameVector:
    return FrameVector(tuple(ZERO + component for component in components))


def _structure(family: str, eta: Optional[int]) -> Dict[Pair, FrameVector]:
    a, b, g, d = ALPHA, BETA, GAMMA, DELTA
    if family == "G1":
        rows = ((a, 0, -b), (-a, -b, 0), (b, a, a))
    elif family == "G2":
        rows = ((0, g, -b), (0, -b, -g), (a, 0, 0))
    elif family == "G3":
        rows = ((0, 0, -g), (0, -b, 0), (a, 0, 0))
    elif family == "G4":
        rows = ((0, -1, 2 * eta - b), (0, -b, 1), (a, 0, 0))
    elif family == "G5":
        rows = ((0, 0, 0), (a, b, 0), (g, d, 0))
    elif family == "G6":
        rows = ((0, a, b), (0, g, d), (0, 0, 0))
    else:
        rows = ((-a, -b, -b), (a, b, b), (g, d, d))
    return {pair: _vector(*row) for pair, row in zip(PAIRS, rows)}


def _constraints(family: str) -> ConstraintSet:
    a, b, g, d = ALPHA, BETA, GAMMA, DELTA
    if family == "G1":
        return ConstraintSet.build(inequations=[a])
    if family == "G2":
        return ConstraintSet.build(inequations=[g])
    if family == "G5":
        return ConstraintSet.build(equalities=[a * g + b * d], inequations=[a + d])
    if family == "G6":
        return ConstraintSet.build(equalities=[a * g - b * d], inequations=[a + d])
    if family == "G7":
        return ConstraintSet.build(equalities=[a * g], inequations=[a + d])
    return ConstraintSet.build()


def normalize_family(family: str) -> str:
    tag = family.strip().upper()
    if tag not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    return tag


def make_group(
    family: str,
    eta: Optional[int] = None,
    numeric_params: Optional[Mapping[str, Scalar]] = None,
) -> LieAlgebra:
    """
    Build a family symbolically, or at a rational point when numeric_params is
    given. Numeric instances are checked against every family constraint.
    """
    family = normalize_family(family)
    if family == "G4" and eta not in ETAS:
        raise UsageError("G4 needs eta = +1 or -1")
    if family != "G4" and eta is not None:
        raise UsageError(f"{family} takes no eta")

    structure = _structure(family, eta)
    constraints = _constraints(family)
    algebra = LieAlgebra(
        family=family,
        eta=eta,
        structure=structure,
        constraints=constraints,
        parameters=PARAMETERS[family],
    )
    if numeric_params is None:
        return algebra
    return instantiate(algebra, numeric_params)


def instantiate(algebra: LieAlgebra, numeric_params: Mapping[str, Scalar]) -> LieAlgebra:
    missing = [name for name in VARIABLES if name not in numeric_params]
    if missing:
        raise UsageError(f"numeric instance does not assign {', '.join(missing)}")
    point = {name: Fraction(numeric_params[name]) for name in VARIABLES}
    for equality in algebra.constraints.equalities:
        if evaluate(equality, point) != 0:
            raise ConstraintViolation(render(equality), "must vanish")
    for inequation in algebra.constraints.inequations:
        if evaluate(inequation, point) == 0:
            raise ConstraintViolation(render(inequation), "must be nonzero")

    values = {name: const(value) for name, value in point.items()}
    structure = {
        pair: FrameVector(tuple(substitute(x, values) for x in vector.components))
        for pair, vector in algebra.structure.items()
    }
    return LieAlgebra(
        family=algebra.family,
        eta=algebra.eta,
        structure=structure,
        constraints=ConstraintSet.build(),
        parameters=algebra.parameters,
        point=tuple(sorted(point.items())),
    )


def from_structure_constants(
    structure: Mapping[Pair, FrameVector],
    constraints: Optional[ConstraintSet] = None,
    family: str = "custom",
) -> LieAlgebra:
    """Raw constructor for test algebras; pairs absent from `structure` bracket to zero."""
    return LieAlgebra(
        family=family,
        eta=None,
        structure={pair: structure.get(pair, FrameVector.zero()) for pair in PAIRS},
        constraints=constraints or ConstraintSet.build(),
        parameters=VARIABLES,
    )


def bracket(algebra: LieAlgebra, x: FrameVector, y: FrameVector) -> FrameVector:
    result = FrameVector.zero()
    for i, j in product(range(3), repeat=2):
        if i != j and x[i] and y[j]:
            result = result + algebra.bracket_of_basis(i, j).scaled(x[i] * y[j])
    return result


def metric(x: FrameVector, y: FrameVector) -> Polynomial:
    return sum((sign * x[k] * y[k] for k, sign in enumerate(SIGNATURE)), ZERO)


def jacobi_check(
    algebra: LieAlgebra, points: int = JACOBI_POINTS, seed: int = DEFAULT_SEED
) -> JacobiReport:
    """
    Evaluate the Jacobiator on every basis triple. Nonzero symbolic residuals
    are tested at random points of the family's constraint variety.
    """
    residuals = []
    basis = [FrameVector.basis(k) for k in range(3)]
    for i, j, k in product(range(3), repeat=3):
        x, y, z = basis[i], basis[j], basis[k]
        jacobiator = (
            bracket(algebra, x, bracket(algebra, y, z))
            + bracket(algebra, y, bracket(algebra, z, x))
            + bracket(algebra, z, bracket(algebra, x, y))
        )
        if not jacobiator.is_zero():
            residuals.append(((i + 1, j + 1, k + 1), jacobiator))

    if not residuals:
        return JacobiReport(passed=True, residuals=(), points_checked=0)

    sampler = PointSampler(seed)
    passed = True
    checked = 0
    for _ in range(points):
        checked += 1
        point = sampler.draw(
            algebra.parameters,
            equalities=algebra.constraints.equalities,
            inequations=algebra.constraints.inequations,
        )
        if any(
            evaluate(component, point)
            for _, residual in residuals
            for component in residual.components
        ):
            passed = False
            break
    logger.info("jacobi check for %s: passed=%s", algebra.family, passed)
    return JacobiReport(passed=passed, residuals=tuple(residuals), points_checked=checked)

"""
Codazzi and quasi-statistical condition systems, checked against claimed
solution families by exact substitution and probed for counterexamples by
seeded sampling.
"""
import logging
import re
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

from liecodazzi.cache.cachedict import CacheDict
from liecodazzi.config import CACHE_MAX_LENGTH
from liecodazzi.connection.connection import BASIS, build, definitions_for
from liecodazzi.data_classes.data_classes import (
    CaseId,
    Connection,
    ConnectionKind,
    Label,
    LieAlgebra,
    Point,
    PolySystem,
    SolutionFamily,
    Status,
    Structure,
    Tensor02,
    Verdict,
)
from liecodazzi.exceptions import ConstraintViolation, SamplerStarvation, UsageError
from liecodazzi.liealg.liealg import PAIRS
from liecodazzi.poly.poly import (
    VARIABLES,
    Polynomial,
    evaluate,
    is_constant,
    parse,
    remainder,
    render,
    substitute,
    to_ascii,
    variables_of,
)
from liecodazzi.sampling.sampling import PointSampler
from liecodazzi.tensorcalc.tensorcalc import cov_deriv_02, symmetric_ricci, torsion

logger = logging.getLogger(__name__)

_CACHE = CacheDict(cache_len=CACHE_MAX_LENGTH)

UNRESTRICTED = SolutionFamily(text="all parameters")


def connection_for(algebra: LieAlgebra, kind: ConnectionKind) -> Connection:
    return _CACHE.get_or_compute(
        ("connection", algebra.key, kind), lambda: build(algebra, kind)
    )


def condition_value(
    connection: Connection,
    omega: Tensor02,
    structure: Structure,
    a: int,
    b: int,
    j: int,
) -> Polynomial:
    """
    f(ea, eb, ej) = (nabla_ea omega)(eb, ej) - (nabla_eb omega)(ea, ej), plus
    omega(T(ea, eb), ej) for the quasi-statistical condition. Zero-based.
    """
    return _condition(
        cov_deriv_02(connection, omega), torsion(connection), omega, structure, a, b, j
    )


def torsion_term(connection: Connection, omega: Tensor02, a: int, b: int, j: int) -> Polynomial:
    return omega.apply(torsion(connection).value(a, b), BASIS[j])


def _condition(nabla, torsion_tensor, omega, structure, a, b, j) -> Polynomial:
    value = nabla.value(a, b, j) - nabla.value(b, a, j)
    if structure is Structure.QUASISTAT:
        value += omega.apply(torsion_tensor.value(a, b), BASIS[j])
    return value


def _system(
    algebra: LieAlgebra,
    connection: Connection,
    omega: Tensor02,
    structure: Structure,
) -> PolySystem:
    if connection.algebra.key != algebra.key:
        raise UsageError("connection was built for a different algebra")
    nabla = cov_deriv_02(connection, omega)
    torsion_tensor = torsion(connection)
    entries = []
    for a, b in PAIRS:
        for j in range(3):
            value = _condition(nabla, torsion_tensor, omega, structure, a, b, j)
            entries.append(((a + 1, b + 1, j + 1), value))
    return PolySystem(
        entries=tuple(entries),
        constraints=algebra.constraints,
        case_id=CaseId(algebra.family, algebra.eta, connection.kind, structure),
        parameters=algebra.parameters,
    )


def codazzi_system(algebra: LieAlgebra, connection: Connection, omega: Tensor02) -> PolySystem:
    return _system(algebra, connection, omega, Structure.CODAZZI)


def quasistat_system(algebra: LieAlgebra, connection: Connection, omega: Tensor02) -> PolySystem:
    return _system(algebra, connection, omega, Structure.QUASISTAT)


def build_system(algebra: LieAlgebra, kind: ConnectionKind, structure: Structure) -> PolySystem:
    """System for omega = symmetrized Ricci tensor of the chosen connection."""

    def compute() -> PolySystem:
        connection = connection_for(algebra, kind)
        omega = symmetric_ricci(connection)
        if structure is Structure.CODAZZI:
            return codazzi_system(algebra, connection, omega)
        return quasistat_system(algebra, connection, omega)

    return _CACHE.get_or_compute(("system", algebra.key, kind, structure), compute)


def resolve_assignment(assignment: Mapping[str, Polynomial]) -> Dict[str, Polynomial]:
    """Substitute the assignment into itself until no assigned name remains."""
    resolved = dict(assignment)
    for _ in range(len(resolved) + 1):
        updated = {name: substitute(value, resolved) for name, value in resolved.items()}
        if updated == resolved:
            break
        resolved = updated
    for name, value in resolved.items():
        if set(variables_of(value)) & set(resolved):
            raise UsageError(f"cyclic assignment for {name}")
    return resolved


def solution_family(
    assignment: Optional[Mapping[str, Union[str, Polynomial]]] = None,
    inequations: Iterable[Union[str, Polynomial]] = (),
    relations: Iterable[Union[str, Polynomial]] = (),
    eta: Optional[int] = None,
    text: str = "",
) -> SolutionFamily:
    def polynomial(value) -> Polynomial:
        return parse(value, eta=eta, definitions=definitions_for(eta)) if isinstance(value, str) else value

    mapping = {}
    for name, value in (assignment or {}).items():
        if name not in VARIABLES:
            raise UsageError(f"cannot assign unknown parameter {name!r}")
        mapping[name] = polynomial(str(value) if isinstance(value, int) else value)
    resolved = resolve_assignment(mapping)
    family = SolutionFamily(
        assignment=tuple(sorted(resolved.items(), key=lambda item: VARIABLES.index(item[0]))),
        extra_inequations=tuple(polynomial(value) for value in inequations),
        relations=tuple(polynomial(value) for value in relations),
        text=text,
    )
    if not family.text:
        family = SolutionFamily(
            family.assignment, family.extra_inequations, family.relations, family_text(family)
        )
    return family


_ITEM = re.compile(r"^(?P<lhs>[^=!]+?)\s*(?P<op>!=|==|=)\s*(?P<rhs>[^=!]+)$")


def parse_solution(text: str, eta: Optional[int] = None) -> SolutionFamily:
    """
    Parse "a=2*b, g!=0, b^2=2*a^2": `v=expr` assigns a parameter, `x!=y` adds
    an inequation and any other equality becomes a relation.
    """
    assignment, inequations, relations = {}, [], []
    for item in filter(None, (part.strip() for part in text.split(","))):
        match = _ITEM.match(item)
        if match is None:
            raise UsageError(f"cannot read solution item {item!r}")
        lhs, op, rhs = to_ascii(match.group("lhs").strip()), match.group("op"), match.group("rhs")
        if op == "!=":
            inequations.append(_difference(lhs, rhs, eta))
        elif lhs in VARIABLES and lhs not in assignment:
            assignment[lhs] = parse(rhs, eta=eta)
        else:
            relations.append(_difference(lhs, rhs, eta))
    return solution_family(assignment, inequations, relations, eta=eta, text=text.strip())


def _difference(lhs: str, rhs: str, eta: Optional[int]) -> Polynomial:
    return parse(lhs, eta=eta) - parse(rhs, eta=eta)


def family_text(family: SolutionFamily) -> str:
    if family.unrestricted:
        return "all parameters"
    parts = [f"{name}={render(value)}" for name, value in family.assignment]
    parts += [f"{render(value)}=0" for value in family.relations]
    parts += [f"{render(value)}!=0" for value in family.extra_inequations]
    return ", ".join(parts)


def family_contains(family: SolutionFamily, point: Point) -> bool:
    for name, value in family.assignment:
        if point[name] != evaluate(value, point):
            return False
    if any(evaluate(relation, point) != 0 for relation in family.relations):
        return False
    return all(evaluate(value, point) != 0 for value in family.extra_inequations)


def check_on_family(system: PolySystem, family: SolutionFamily) -> Verdict:
    """
    Substitute the family into all nine entries and reduce modulo the family
    equalities and relations. Zero remainders everywhere means the system holds
    on the whole family.
    """
    assignment = family.mapping
    modulus = []
    for equality in system.constraints.equalities:
        reduced = substitute(equality, assignment)
        if reduced and is_constant(reduced):
            raise ConstraintViolation(render(equality), f"cannot vanish on {family.text}")
        modulus.append(reduced)
    for inequation in system.constraints.inequations + family.extra_inequations:
        if not substitute(inequation, assignment):
            raise ConstraintViolation(render(inequation), f"vanishes identically on {family.text}")
    modulus += [substitute(relation, assignment) for relation in family.relations]

    residuals = []
    for label, value in system.entries:
        reduced = remainder(substitute(value, assignment), modulus)
        if reduced:
            residuals.append((label, reduced))

    if residuals:
        status = Status.FAILS_ON_FAMILY
        explanation = f"{len(residuals)} entries do not vanish on {family.text}"
    elif family.unrestricted:
        status = Status.HOLDS_ALWAYS
        explanation = "every entry vanishes identically"
    else:
        status = Status.HOLDS_ON_FAMILY
        explanation = f"every entry vanishes on {family.text}"
    return Verdict(
        case_id=system.case_id,
        status=status,
        residuals=tuple(residuals),
        explanation=explanation,
    )


def violated_labels(system: PolySystem, point: Point) -> List[Label]:
    return [label for label, value in system.entries if evaluate(value, point) != 0]


def sample_necessity(
    system: PolySystem,
    excluded: Sequence[SolutionFamily],
    trials: int,
    seed: Union[int, str],
) -> Verdict:
    """
    Evaluate the system at `trials` admissible points outside every excluded
    family. Raises SamplerStarvation when no such point can be found.
    """
    if trials < 1:
        raise UsageError("trials must be at least 1")
    sampler = PointSampler(seed)

    def outside(point: Point) -> bool:
        return not any(family_contains(family, point) for family in excluded)

    violations, first_violation, first_solution = 0, None, None
    for _ in range(trials):
        point = sampler.draw(
            system.parameters,
            equalities=system.constraints.equalities,
            inequations=system.constraints.inequations,
            accept=outside,
        )
        if violated_labels(system, point):
            violations += 1
            first_violation = first_violation or point
        else:
            first_solution = first_solution or point

    if violations == trials:
        status = Status.NEVER_HOLDS_OFF_FAMILY
        witness = first_violation
        explanation = f"all {trials} sampled points violate the system"
    else:
        status = Status.HOLDS_OFF_FAMILY
        witness = first_solution
        explanation = f"{trials - violations} of {trials} sampled points satisfy the system"
    logger.info("%s sampled: %s", system.case_id.text(), explanation)
    return Verdict(
        case_id=system.case_id,
        status=status,
        witness=witness,
        residuals=system.nonzero(),
        explanation=explanation,
        trials=trials,
        violations=violations,
    )


def sample_on_family(
    system: PolySystem, family: SolutionFamily, points: int, seed: Union[int, str]
) -> List[Point]:
    """Admissible points of a solution family (relations must have rational points)."""
    sampler = PointSampler(seed)
    return [
        sampler.draw(
            system.parameters,
            equalities=tuple(system.constraints.equalities) + family.relations,
            inequations=tuple(system.constraints.inequations) + family.extra_inequations,
            assignment=family.mapping,
        )
        for _ in range(points)
    ]


def safe_sample_necessity(
    system: PolySystem, excluded: Sequence[SolutionFamily], trials: int, seed
) -> Optional[Verdict]:
    """sample_necessity, or None when the excluded families cover everything."""
    try:
        return sample_necessity(system, excluded, trials, seed)
    except SamplerStarvation as error:
        logger.warning("%s: %s", system.case_id.text(), error)
        return None

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from liecodazzi.poly.poly import ONE, ZERO, Polynomial

Point = Dict[str, Fraction]
Pair = Tuple[int, int]
Label = Tuple[int, int, int]


class ConnectionKind(Enum):
    LEVI_CIVITA = "levi_civita"
    BOTT = "bott"
    CANONICAL = "canonical"
    KOBAYASHI_NOMIZU = "kobayashi_nomizu"


class Structure(Enum):
    CODAZZI = "codazzi"
    QUASISTAT = "quasistat"


class Status(Enum):
    HOLDS_ALWAYS = "holds-always"
    HOLDS_ON_FAMILY = "holds-on-family"
    FAILS_ON_FAMILY = "fails-on-family"
    NEVER_HOLDS = "never-holds"
    NEVER_HOLDS_OFF_FAMILY = "never-holds-off-family"
    HOLDS_OFF_FAMILY = "holds-off-family"
    PAPER_DISCREPANCY = "paper-discrepancy"


class Severity(Enum):
    TYPO_SUSPECTED = "typo-suspected"
    VERDICT_CONFLICT = "verdict-conflict"


@dataclass(frozen=True)
class FrameVector:
    """
    Coordinates in the pseudo-orthonormal frame e1, e2, e3 (e3 timelike).
    """

    components: Tuple[Polynomial, Polynomial, Polynomial]

    def __post_init__(self):
        assert len(self.components) == 3, "frame vectors have three components"

    @classmethod
    def of(cls, first, second, third) -> "FrameVector":
        return cls((first, second, third))

    @classmethod
    def zero(cls) -> "FrameVector":
        return cls((ZERO, ZERO, ZERO))

    @classmethod
    def basis(cls, index: int) -> "FrameVector":
        """Zero-based basis vector."""
        return cls(tuple(ONE if k == index else ZERO for k in range(3)))

    def __getitem__(self, index: int) -> Polynomial:
        return self.components[index]

    def __add__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(tuple(x + y for x, y in zip(self.components, other.components)))

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(tuple(x - y for x, y in zip(self.components, other.components)))

    def __neg__(self) -> "FrameVector":
        return FrameVector(tuple(-x for x in self.components))

    def scaled(self, factor) -> "FrameVector":
        return FrameVector(tuple(x * factor for x in self.components))

    def is_zero(self) -> bool:
        return not any(self.components)


@dataclass(frozen=True)
class ConstraintSet:
    equalities: Tuple[Polynomial, ...] = ()
    inequations: Tuple[Polynomial, ...] = ()

    @classmethod
    def build(cls, equalities=(), inequations=()) -> "ConstraintSet":
        return cls(
            tuple(dict.fromkeys(equalities)), tuple(dict.fromkeys(inequations))
        )


@dataclass(frozen=True)
class LieAlgebra:
    """
    A family instantiated symbolically or at a rational point.

    `structure` holds [ei, ej] for zero-based i < j; the other pairs follow by
    antisymmetry.
    """

    family: str
    eta: Optional[int]
    structure: Mapping[Pair, FrameVector]
    constraints: ConstraintSet
    parameters: Tuple[str, ...]
    point: Optional[Tuple[Tuple[str, Fraction], ...]] = None

    @property
    def key(self) -> Tuple:
        return (self.family, self.eta, self.point)

    def bracket_of_basis(self, i: int, j: int) -> FrameVector:
        if i == j:
            return FrameVector.zero()
        if i < j:
            return self.structure[(i, j)]
        return -self.structure[(j, i)]


@dataclass(frozen=True)
class JacobiReport:
    passed: bool
    residuals: Tuple[Tuple[Tuple[int, int, int], FrameVector], ...]
    points_checked: int


@dataclass(frozen=True)
class DerivedConstants:
    m1: Polynomial
    m2: Polynomial
    m3: Polynomial
    n1: Optional[Polynomial] = None
    n2: Optional[Polynomial] = None
    n3: Optional[Polynomial] = None


@dataclass(frozen=True)
class Connection:
    """gamma[i][j] is nabla_{ei} ej as a frame vector (zero-based indices)."""

    kind: ConnectionKind
    gamma: Tuple[Tuple[FrameVector, ...], ...]
    algebra: LieAlgebra

    def coefficient(self, i: int, j: int, k: int) -> Polynomial:
        return self.gamma[i][j][k]


@dataclass(frozen=True)
class Curvature:
    """r[(i, j)][k] is R(ei, ej)ek for i < j."""

    r: Mapping[Pair, Tuple[FrameVector, ...]]

    def value(self, i: int, j: int, k: int) -> FrameVector:
        if i == j:
            return FrameVector.zero()
        if i < j:
            return self.r[(i, j)][k]
        return -self.r[(j, i)][k]


@dataclass(frozen=True)
class Tensor02:
    w: Tuple[Tuple[Polynomial, ...], ...]

    def value(self, i: int, j: int) -> Polynomial:
        return self.w[i][j]

    def apply(self, x: FrameVector, y: FrameVector) -> Polynomial:
        return sum(
            (x[i] * y[j] * self.w[i][j] for i in range(3) for j in range(3)), ZERO
        )


@dataclass(frozen=True)
class Tensor03:
    d: Tuple[Tuple[Tuple[Polynomial, ...], ...], ...]

    def value(self, i: int, j: int, k: int) -> Polynomial:
        return self.d[i][j][k]


@dataclass(frozen=True)
class TorsionTensor:
    t: Mapping[Pair, FrameVector]

    def value(self, i: int, j: int) -> FrameVector:
        if i == j:
            return FrameVector.zero()
        if i < j:
            return self.t[(i, j)]
        return -self.t[(j, i)]


@dataclass(frozen=True)
class CaseId:
    family: str
    eta: Optional[int]
    connection: ConnectionKind
    structure: Structure

    def text(self) -> str:
        eta = "" if self.eta is None else f"(eta={self.eta:+d})"
        return f"{self.family}{eta}/{self.connection.value}/{self.structure.value}"


@dataclass(frozen=True)
class PolySystem:
    """Nine labelled condition polynomials; labels are one-based (a, b, j)."""

    entries: Tuple[Tuple[Label, Polynomial], ...]
    constraints: ConstraintSet
    case_id: CaseId
    parameters: Tuple[str, ...]

    def __post_init__(self):
        labels = [label for label, _ in self.entries]
        assert len(labels) == 9 and len(set(labels)) == 9, "nine unique labels"

    def value(self, label: Label) -> Polynomial:
        return dict(self.entries)[label]

    def nonzero(self) -> Tuple[Tuple[Label, Polynomial], ...]:
        return tuple((label, value) for label, value in self.entries if value)


@dataclass(frozen=True)
class SolutionFamily:
    assignment: Tuple[Tuple[str, Polynomial], ...] = ()
    extra_inequations: Tuple[Polynomial, ...] = ()
    relations: Tuple[Polynomial, ...] = ()
    text: str = ""

    @property
    def mapping(self) -> Dict[str, Polynomial]:
        return dict(self.assignment)

    @property
    def unrestricted(self) -> bool:
        return not (self.assignment or self.extra_inequations or self.relations)


@dataclass(frozen=True)
class Verdict:
    case_id: CaseId
    status: Status
    witness: Optional[Point] = None
    residuals: Tuple[Tuple[Label, Polynomial], ...] = ()
    explanation: str = ""
    paper_claim: str = ""
    recomputed_claim: str = ""
    trials: int = 0
    violations: int = 0

    def __post_init__(self):
        if self.status is Status.NEVER_HOLDS:
            assert self.explanation, "never-holds needs an explanation"
        if self.status is Status.PAPER_DISCREPANCY:
            assert self.paper_claim and self.recomputed_claim

    @property
    def residual_labels(self) -> List[Label]:
        return [label for label, _ in self.residuals]


@dataclass(frozen=True)
class DiscrepancyEntry:
    location: str
    printed: str
    recomputed: str
    severity: Severity


@dataclass
class DiscrepancyRegister:
    entries: List[DiscrepancyEntry] = field(default_factory=list)

    def append(self, entry: DiscrepancyEntry) -> None:
        self.entries.append(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class AuditRow:
    family: str
    connection: ConnectionKind
    structure: Structure
    paper_claim: str
    status: Status
    verdicts: Tuple[Verdict, ...]

    @property
    def case_id(self) -> str:
        return f"{self.family}/{self.connection.value}/{self.structure.value}"


@dataclass(frozen=True)
class AuditReport:
    rows: Tuple[AuditRow, ...]
    register: DiscrepancyRegister
    seed: int
    trials: int

    @property
    def has_discrepancies(self) -> bool:
        """True when some claimed verdict disagrees with recomputation."""
        return any(
            row.status is Status.PAPER_DISCREPANCY for row in self.rows
        )

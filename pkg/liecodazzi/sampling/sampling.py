"""
Seeded rational-point sampling on family constraint varieties.

Equalities are satisfied by solving, for each one in turn, a randomly chosen
parameter in which it is linear; every constraint is then re-checked exactly,
so a returned point is always admissible.
"""
import logging
import random
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from liecodazzi.config import (
    SAMPLE_DENOMINATOR_BOUND,
    SAMPLE_NUMERATOR_BOUND,
    SAMPLER_MAX_ATTEMPTS,
)
from liecodazzi.data_classes.data_classes import Point
from liecodazzi.exceptions import SamplerStarvation
from liecodazzi.poly.poly import (
    VARIABLES,
    Polynomial,
    evaluate,
    is_constant,
    linear_split,
    render,
    substitute,
    variables_of,
)

logger = logging.getLogger(__name__)


class PointSampler:
    def __init__(
        self,
        seed: Union[int, str],
        max_attempts: int = SAMPLER_MAX_ATTEMPTS,
        numerator_bound: int = SAMPLE_NUMERATOR_BOUND,
        denominator_bound: int = SAMPLE_DENOMINATOR_BOUND,
    ):
        self.random = random.Random(seed)
        self.max_attempts = max_attempts
        self.numerator_bound = numerator_bound
        self.denominator_bound = denominator_bound

    def draw_scalar(self) -> Fraction:
        return Fraction(
            self.random.randint(-self.numerator_bound, self.numerator_bound),
            self.random.randint(1, self.denominator_bound),
        )

    def draw(
        self,
        parameters: Sequence[str],
        equalities: Sequence[Polynomial] = (),
        inequations: Sequence[Polynomial] = (),
        assignment: Optional[Mapping[str, Polynomial]] = None,
        accept: Optional[Callable[[Point], bool]] = None,
    ) -> Point:
        """
        Draw one point on which every equality vanishes, every inequation is
        nonzero and `accept` holds. Parameters outside `parameters` are 0;
        assigned parameters are computed from the free ones.
        """
        assignment = dict(assignment or {})
        free = [name for name in parameters if name not in assignment]
        reduced = [substitute(equality, assignment) for equality in equalities]
        for equality in reduced:
            if equality and is_constant(equality):
                raise SamplerStarvation(0, f"equality {render(equality)} can never vanish")

        for _ in range(self.max_attempts):
            point = self._attempt(free, reduced, assignment)
            if point is None:
                continue
            if not self._admissible(point, equalities, inequations, accept):
                logger.debug("rejected sample %s", point)
                continue
            return point
        raise SamplerStarvation(
            self.max_attempts,
            "no point satisfies the constraints outside the excluded families",
        )

    def _attempt(self, free, reduced, assignment) -> Optional[Point]:
        point = {name: Fraction(0) for name in VARIABLES}
        for name in free:
            point[name] = self.draw_scalar()
        solved = set()
        for equality in reduced:
            candidates = [
                name
                for name in variables_of(equality)
                if name in free and name not in solved and linear_split(equality, name)
            ]
            if not candidates:
                continue
            name = self.random.choice(candidates)
            coefficient, rest = linear_split(equality, name)
            denominator = evaluate(coefficient, point)
            if denominator == 0:
                return None
            point[name] = -evaluate(rest, point) / denominator
            solved.add(name)
        for name, value in assignment.items():
            point[name] = evaluate(value, point)
        return point

    @staticmethod
    def _admissible(point, equalities, inequations, accept) -> bool:
        if any(evaluate(equality, point) != 0 for equality in equalities):
            return False
        if any(evaluate(inequation, point) == 0 for inequation in inequations):
            return False
        return accept is None or accept(point)

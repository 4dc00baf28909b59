import pytest

from liecodazzi.exceptions import SamplerStarvation
from liecodazzi.poly.poly import ALPHA, BETA, DELTA, GAMMA, ONE, ZERO
from liecodazzi.sampling.sampling import PointSampler


def test_scalars_are_bounded():
    sampler = PointSampler(seed=0)
    for _ in range(200):
        value = sampler.draw_scalar()
        assert abs(value) <= 10
        assert 1 <= value.denominator <= 10


def test_unused_parameters_are_zero():
    point = PointSampler(seed=1).draw(("a", "b"))
    assert point["g"] == point["d"] == 0


def test_both_branches_of_a_product_constraint():
    """a*g = 0 is met both with a = 0 and with g = 0."""
    sampler = PointSampler(seed=2)
    points = [
        sampler.draw(("a", "b", "g", "d"), equalities=(ALPHA * GAMMA,), inequations=(ALPHA + DELTA,))
        for _ in range(60)
    ]
    for point in points:
        assert point["a"] * point["g"] == 0
        assert point["a"] + point["d"] != 0
    assert any(point["a"] == 0 and point["g"] != 0 for point in points)
    assert any(point["g"] == 0 and point["a"] != 0 for point in points)


def test_assignment_and_acceptance():
    sampler = PointSampler(seed=3)
    point = sampler.draw(
        ("a", "b", "g"),
        assignment={"a": 2 * BETA},
        accept=lambda p: p["b"] > 0,
    )
    assert point["a"] == 2 * point["b"]
    assert point["b"] > 0


def test_deterministic_per_seed():
    first = [PointSampler(seed="42:G1").draw(("a", "b")) for _ in range(3)]
    second = [PointSampler(seed="42:G1").draw(("a", "b")) for _ in range(3)]
    assert first == second


def test_starvation_after_max_attempts():
    sampler = PointSampler(seed=4, max_attempts=10)
    with pytest.raises(SamplerStarvation) as error:
        sampler.draw(("a",), inequations=(ZERO,))
    assert error.value.attempts == 10


def test_impossible_equality_fails_fast():
    sampler = PointSampler(seed=5)
    with pytest.raises(SamplerStarvation) as error:
        sampler.draw(("a",), equalities=(ALPHA + ONE,), assignment={"a": ZERO})
    assert error.value.attempts == 0

import cmath
import math

import pytest

from noncolliding.exceptions import DomainError, DuplicatePointError
from noncolliding.kernels import (
    complement_kernel,
    discrete_sine,
    equal_time_gauge,
    extended_sine,
    extended_sine_closed_form,
    sine_correlation,
)
from noncolliding.modeling import ComplexSlope, SineQuery, SpaceTimePoint

SLOPE = ComplexSlope(u=0.7 * cmath.exp(2j))


@pytest.mark.parametrize("u", [1j, 0.7 * cmath.exp(2j), 1.8 * cmath.exp(0.6j)])
def test_diagonal_density(u):
    slope = ComplexSlope(u=u)
    value = extended_sine(slope, SineQuery(t=3, x=-2, s=3, y=-2))
    assert value.real == pytest.approx(slope.q, abs=1e-12)
    assert abs(value.imag) < 1e-12


def test_symmetric_slope_density():
    assert extended_sine(ComplexSlope(u=1j), SineQuery(t=0, x=0, s=0, y=0)).real == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("x", range(-10, 11))
def test_equal_time_modulus(x):
    value = extended_sine(SLOPE, SineQuery(t=1, x=x, s=1, y=0))
    assert abs(value) == pytest.approx(abs(discrete_sine(SLOPE.phi, x, 0)), abs=1e-10)


@pytest.mark.parametrize("n", [-3, -1, 1, 2, 4])
def test_equal_time_gauge(n):
    value = extended_sine(SLOPE, SineQuery(t=0, x=0, s=0, y=-n)) * equal_time_gauge(SLOPE, n)
    assert abs(value.imag) < 1e-10
    assert abs(value) == pytest.approx(abs(discrete_sine(SLOPE.phi, n, 0)), abs=1e-10)


def test_one_step_closed_form():
    value = extended_sine(ComplexSlope(u=1j), SineQuery(t=1, x=0, s=0, y=0))
    assert abs(value - (-0.5 + 1 / math.pi)) < 1e-10


@pytest.mark.parametrize("dt", [-2, -1, 0, 1, 2])
@pytest.mark.parametrize("dx", [-3, -1, 0, 2, 3])
def test_closed_form_agreement(dt, dx):
    q = SineQuery(t=dt, x=dx, s=0, y=0)
    assert abs(extended_sine(SLOPE, q) - extended_sine_closed_form(SLOPE, q)) < 1e-10


@pytest.mark.parametrize("phi,x,y,expected", [
    (math.pi / 2, 1, 0, 1 / math.pi),
    (math.pi / 2, 2, 0, 0.0),
    (math.pi / 3, 4, 4, 1 / 3),
    (math.pi / 3, 0, 1, math.sin(-math.pi / 3) / -math.pi),
])
def test_discrete_sine(phi, x, y, expected):
    assert discrete_sine(phi, x, y) == pytest.approx(expected, abs=1e-15)


def test_discrete_sine_domain():
    with pytest.raises(DomainError):
        discrete_sine(math.pi, 0, 1)


def test_complement():
    def kernel(q):
        return extended_sine(SLOPE, q)

    complement = complement_kernel(kernel)
    twice = complement_kernel(complement)
    for q in [SineQuery(t=0, x=0, s=0, y=0), SineQuery(t=1, x=2, s=0, y=0), SineQuery(t=0, x=-1, s=2, y=1)]:
        assert abs(twice(q) - kernel(q)) < 1e-14
    assert complement(SineQuery(t=0, x=0, s=0, y=0)).real == pytest.approx(1 - SLOPE.q, abs=1e-12)


def test_sine_correlation():
    points = [SpaceTimePoint(t=0, x=0), SpaceTimePoint(t=0, x=1)]
    assert sine_correlation(SLOPE, []) == 1
    assert sine_correlation(SLOPE, points[:1]) == pytest.approx(SLOPE.q, abs=1e-12)
    pair = sine_correlation(SLOPE, points)
    assert pair == pytest.approx(SLOPE.q**2 - discrete_sine(SLOPE.phi, 1, 0) ** 2, abs=1e-10)
    with pytest.raises(DuplicatePointError):
        sine_correlation(SLOPE, [points[0], points[0]])

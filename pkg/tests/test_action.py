import cmath
import math

import numpy as np
import pytest

from noncolliding import NonColliding, SearchBox
from noncolliding.action import (
    count_critical_points,
    find_critical_point,
    im_s_on_real_line,
    level_curves,
    s_prime,
    s_second,
    s_value,
)
from noncolliding.action.level_curves import tangent_directions
from noncolliding.action.s_function import _power_sum, im_s_jumps
from noncolliding.exceptions import BranchCutError, NoRootError, SingularityError
from noncolliding.initial_data import ProfileFunction, from_profile, profile_density
from noncolliding.modeling import ParticleConfig, WalkModel


def _single(beta: float = 0.5) -> WalkModel:
    return WalkModel(a=ParticleConfig.of(0), beta=beta, T=1)


def test_s_prime_single_walk():
    expected = 1 / 1j - math.pi * cmath.cos(math.pi * 1j) / cmath.sin(math.pi * 1j)
    assert abs(s_prime(_single(), 1j) - expected) < 1e-13


def test_s_prime_principal_value_sum():
    z = 1j
    m = 10**5
    n = np.arange(-m, m + 1)
    truncated = 1 / z - np.sum(1 / (z - n))
    assert abs(s_prime(_single(), z) - truncated) < 1e-4


@pytest.mark.parametrize("z", [1j, -0.3 + 0.2j, 2.5 + 4j])
def test_s_prime_log_odds(z):
    difference = s_prime(_single(0.5), z) - s_prime(_single(0.25), z)
    assert abs(difference - math.log(3)) < 1e-12


def test_s_prime_finite_difference(root_figure_model):
    z, h = -0.5 + 0.8j, 1e-5
    derivative = (s_value(root_figure_model, z + h) - s_value(root_figure_model, z - h)) / (2 * h)
    assert abs(derivative - s_prime(root_figure_model, z)) < 1e-8


@pytest.mark.parametrize("z", [0.13 + 0.41j, -0.72 + 1.3j, 0.9 + 0.05j])
def test_s_second_finite_difference(root_figure_model, z):
    h = 1e-5
    derivative = (s_prime(root_figure_model, z + h) - s_prime(root_figure_model, z - h)) / (2 * h)
    assert abs(derivative - s_second(root_figure_model, z)) < 1e-7 * max(1.0, abs(derivative))


def test_s_second_conjugation(root_figure_model):
    z = 0.2 + 0.6j
    assert abs(s_second(root_figure_model, z.conjugate()) - s_second(root_figure_model, z).conjugate()) < 1e-12


def test_s_value_lower_half_plane(root_figure_model):
    with pytest.raises(BranchCutError):
        s_value(root_figure_model, 0.1 - 0.1j)


def test_critical_point_root_figure(root_figure_model):
    cp = find_critical_point(root_figure_model)
    assert cp.z_c.imag > 0
    assert cp.residual < 1e-10
    assert abs(s_prime(root_figure_model, cp.z_c.conjugate())) < 1e-10
    assert count_critical_points(root_figure_model) == 1


def test_critical_point_follows_search_box(root_figure_model):
    find_critical_point(root_figure_model)
    NonColliding.init(search_box=SearchBox(re_min=50, re_max=60, im_min=0.02, im_max=3))
    with pytest.raises(NoRootError):
        find_critical_point(root_figure_model)
    NonColliding.reset()
    assert find_critical_point(root_figure_model).z_c.imag > 0


@pytest.mark.filterwarnings("error::RuntimeWarning")
def test_power_sum_at_pole_is_silent():
    out = _power_sum(np.array([2.0 + 0j, 0.5 + 0.5j]), np.array([0.0, 2.0]), 1)
    assert not np.isfinite(out[0])
    assert np.isfinite(out[1])


@pytest.mark.slow
def test_critical_point_profile_converges():
    profile = ProfileFunction.linear(2.0)
    density = profile_density(profile)
    errors = []
    for n in (201, 801, 3201):
        model = WalkModel(a=from_profile(profile, n), beta=0.5, T=math.floor(n**0.6))
        errors.append(abs(find_critical_point(model, profile=density).z_c - (-1 + 1j) / 2))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 0.1


def test_im_s_down_steps(root_figure_model):
    jumps = im_s_jumps(root_figure_model, -10, 10)
    down = sorted(n for n, jump in jumps.items() if jump < 0)
    assert down == [-5, -3, -2]
    assert all(abs(abs(jump) - math.pi / 7) < 1e-15 for jump in jumps.values())


def test_im_s_steps_match_jumps(root_figure_model):
    t = root_figure_model.T
    jumps = im_s_jumps(root_figure_model, -10, 10)
    for n in range(-9, 10):
        left = im_s_on_real_line(root_figure_model, (n - 0.5) / t)
        right = im_s_on_real_line(root_figure_model, (n + 0.5) / t)
        assert right - left == pytest.approx(jumps.get(n, 0.0), abs=1e-12)
        assert im_s_on_real_line(root_figure_model, (n + 0.25) / t) == pytest.approx(right, abs=1e-12)


def test_im_s_at_jump(root_figure_model):
    with pytest.raises(SingularityError):
        im_s_on_real_line(root_figure_model, -3 / 7)


def test_tangent_directions(root_figure_model):
    cp = find_critical_point(root_figure_model)
    directions = tangent_directions(cp)
    assert len(directions) == 4
    ascent = cp.s2 * directions[0] ** 2
    assert abs(ascent.imag) < 1e-10 * abs(cp.s2)
    assert ascent.real > 0


def test_level_curves(root_figure_model):
    model = root_figure_model
    cp = find_critical_point(model)
    box = SearchBox(re_min=-3, re_max=3, im_min=0.02, im_max=3)
    curves = level_curves(model, cp, box, step=0.01)
    assert len(curves) == 4
    assert sorted(c.kind for c in curves) == ["ascent", "ascent", "descent", "descent"]
    assert all(c.monotone for c in curves)
    assert all(c.points[0] == cp.z_c for c in curves)
    assert any(c.exit == "real_axis" for c in curves)

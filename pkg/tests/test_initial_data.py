import itertools
import math

import numpy as np
import pytest

from noncolliding.exceptions import (
    DomainError,
    InvalidProfileError,
    MonotonicityError,
    NormalizationError,
    ParameterError,
)
from noncolliding.initial_data import (
    ProfileFunction,
    bernoulli_density,
    bernoulli_window,
    check_density,
    drift_finite,
    drift_from_global,
    drift_from_profile,
    from_profile,
    packed,
    profile_density,
    read_config,
    sine_density,
    sine_window,
    sine_window_probability,
    staircase_config,
    write_config,
)
from noncolliding.initial_data.config_io import parse_config
from noncolliding.initial_data.random_ic import (
    MAX_SINE_WINDOW,
    _window_spectrum,
    brute_force_probability,
    sine_window_kernel,
)
from noncolliding.kernels import discrete_sine
from noncolliding.modeling import DensityProfile, ParticleConfig, WindowSpec

SKEWED = ProfileFunction.linear(2.0, 0.25)


@pytest.mark.parametrize("slope,N,expected", [
    (2.0, 5, (-4, -2, 0, 2, 4)),
    (1.5, 5, (-3, -2, 0, 1, 3)),
    (2.0, 7, (-6, -4, -2, 0, 2, 4, 6)),
    (3.0, 1, (0,)),
])
def test_from_profile(slope, N, expected):  # noqa: N803
    assert from_profile(ProfileFunction.linear(slope), N).positions == expected


@pytest.mark.parametrize("N", [0, 4, -3])
def test_from_profile_needs_odd_size(N):  # noqa: N803
    with pytest.raises(DomainError):
        from_profile(ProfileFunction.linear(2.0), N)


def test_invalid_profiles():
    with pytest.raises(InvalidProfileError):
        ProfileFunction.linear(0.8)
    with pytest.raises(InvalidProfileError):
        ProfileFunction.linear(2.0, 3.0)


def test_profile_zero_and_density():
    assert SKEWED.chi == pytest.approx(-0.125, abs=1e-12)
    assert SKEWED.q == pytest.approx(0.5)
    assert ProfileFunction.linear(2.0).density_bounds == pytest.approx((0.25, 0.75))


def test_packed():
    assert packed(1).positions == (0,)
    assert packed(3).positions == (0, 1, 2)
    with pytest.raises(DomainError):
        packed(0)


def test_staircase_config():
    a = staircase_config(10, 4, 0.5)
    assert a.positions == (-10, -8, -6, -4, -2, 1, 4, 8, 10, 12)
    assert sum(x < 0 for x in a.positions) == 5


def test_staircase_config_overflow():
    with pytest.raises(ParameterError):
        staircase_config(4, 10, 0.5)
    with pytest.raises(DomainError):
        staircase_config(4, 10, 0.0)


def test_symmetric_profile_drift():
    assert drift_from_profile(ProfileFunction.linear(2.0)) == pytest.approx(0.0, abs=1e-10)


def test_skewed_profile_drift():
    assert drift_from_profile(SKEWED) == pytest.approx(0.5 * math.log(5 / 3), abs=1e-10)


def test_profile_density():
    density = profile_density(SKEWED)
    assert density.density_at(0.0) == pytest.approx(0.5)
    assert density.drift == pytest.approx(0.5 * math.log(5 / 3), abs=1e-10)


@pytest.mark.parametrize("profile", [ProfileFunction.linear(2.0), SKEWED, ProfileFunction.linear(3.0, -0.4)])
def test_global_drift_of_pushforward(profile):
    assert drift_from_global(profile.pushforward()) == pytest.approx(drift_from_profile(profile), abs=1e-9)


def test_global_drift_needs_probability():
    with pytest.raises(NormalizationError):
        drift_from_global(DensityProfile.lebesgue(0.5))
    with pytest.raises(NormalizationError):
        drift_from_global(DensityProfile(pieces=((-1.0, 1.0, 0.25),), left_tail_rho=0.0, right_tail_rho=0.0))
    with pytest.raises(DomainError):
        drift_from_global(DensityProfile(pieces=((1.0, 3.0, 0.5),), left_tail_rho=0.0, right_tail_rho=0.0))


def test_finite_drift_of_symmetric_configuration():
    a = ParticleConfig(positions=tuple(range(-30, 31)))
    assert drift_finite(a, 2, 3.0) == 0.0


def test_finite_drift_cutoff():
    a = ParticleConfig(positions=tuple(range(1, 51)))
    expected = math.fsum(1 / k for k in range(10, 51))
    assert drift_finite(a, 1, 10.0) == pytest.approx(expected, rel=1e-15)
    with pytest.raises(DomainError):
        drift_finite(a, 0, 1.0)


def test_finite_drift_approaches_profile_drift():
    a = from_profile(SKEWED, 2001)
    assert drift_finite(a, 2001, 1e-9) == pytest.approx(drift_from_profile(SKEWED), abs=5e-3)


def test_random_densities():
    assert bernoulli_density(0.3, 0.5).drift == pytest.approx(0.0)
    sine = sine_density(math.pi / 3, 0.25)
    assert sine.density_at(0.0) == pytest.approx(1 / 3)
    assert sine.drift == pytest.approx(math.log(1 / 3) / 3)
    with pytest.raises(DomainError):
        sine_density(math.pi, 0.5)
    with pytest.raises(DomainError):
        bernoulli_density(0.3, 1.0)


def test_window_sites():
    window = WindowSpec(M=10, alpha=0.25)
    assert (window.left, window.right) == (-7, 2)
    assert window.sites.size == 10


def test_bernoulli_window_frequency():
    window = WindowSpec(M=20_000, alpha=0.5)
    a = bernoulli_window(window, 0.3, 8)
    assert window.left <= a.positions[0] and a.positions[-1] <= window.right
    assert a.n / window.sites.size == pytest.approx(0.3, abs=4 * math.sqrt(0.21 / window.sites.size))


def test_bernoulli_window_is_reproducible():
    window = WindowSpec(M=50, alpha=0.5)
    assert bernoulli_window(window, 0.5, 3) == bernoulli_window(window, 0.5, 3)


def test_sine_window_kernel_diagonal():
    kernel = sine_window_kernel(WindowSpec(M=6, alpha=0.5), math.pi / 4)
    assert np.allclose(np.diag(kernel), 0.25)
    assert np.allclose(kernel, kernel.T)


@pytest.mark.parametrize("phi", [math.pi / 3, math.pi / 2, 2.5])
def test_sequential_probabilities_match_determinants(phi):
    kernel = sine_window_kernel(WindowSpec(M=4, alpha=0.5), phi)
    total = 0.0
    for subset in itertools.product((False, True), repeat=kernel.shape[0]):
        brute = brute_force_probability(kernel, subset)
        assert sine_window_probability(kernel, subset) == pytest.approx(brute, abs=1e-12)
        total += brute
    assert total == pytest.approx(1.0, abs=1e-12)


def test_sine_window_probability_needs_full_pattern():
    kernel = sine_window_kernel(WindowSpec(M=4, alpha=0.5), 1.0)
    with pytest.raises(DomainError):
        sine_window_probability(kernel, [True, False])


def test_sine_window_density():
    window = WindowSpec(M=200, alpha=0.5)
    a = sine_window(window, math.pi / 3, 21)
    assert a == sine_window(window, math.pi / 3, 21)
    assert a.n / window.sites.size == pytest.approx(1 / 3, abs=0.03)


def test_sine_window_size_limit():
    with pytest.raises(DomainError):
        sine_window(WindowSpec(M=200_000, alpha=0.5), 1.0, 0)
    with pytest.raises(DomainError):
        sine_window(WindowSpec(M=MAX_SINE_WINDOW + 1, alpha=0.5), 1.0, 0)


def test_sine_window_reuses_spectrum():
    window = WindowSpec(M=120, alpha=0.4)
    sine_window(window, 2.0, 1)
    hits = _window_spectrum.cache_info().hits
    sine_window(window, 2.0, 2)
    assert _window_spectrum.cache_info().hits == hits + 1


def test_sine_window_kernel_matches_pointwise_values():
    window = WindowSpec(M=9, alpha=0.5)
    kernel = sine_window_kernel(window, 1.2)
    sites = [int(x) for x in window.sites]
    expected = np.array([[discrete_sine(1.2, x, y) for y in sites] for x in sites])
    assert np.allclose(kernel, expected, atol=1e-15)


@pytest.mark.slow
def test_sine_window_site_frequencies():
    window = WindowSpec(M=10, alpha=0.55)
    assert window.sites.size == 10
    kernel = sine_window_kernel(window, math.pi / 2)
    empty = brute_force_probability(kernel, [False] * 10)
    draws = 10**5
    counts = np.zeros(10)
    for seed in range(draws):
        occupied = set(sine_window(window, math.pi / 2, seed).positions)
        counts += [int(x) in occupied for x in window.sites]
    expected = 0.5 / (1 - empty)
    stderr = math.sqrt(expected * (1 - expected) / draws)
    assert np.all(np.abs(counts / draws - expected) < 4 * stderr)


def test_density_of_alternating_sites():
    report = check_density(ParticleConfig(positions=tuple(range(-40, 41, 2))), 10, 30, 0.25, 0.75)
    assert report.passed
    assert (report.min_count, report.max_count) == (5, 5)
    assert (report.lower_bound, report.upper_bound) == (3, 7)


def test_density_of_packed_block():
    report = check_density(ParticleConfig(positions=tuple(range(-40, 41))), 10, 30, 0.25, 0.75)
    assert not report.passed
    assert report.max_count == 10


def test_density_with_gap():
    positions = tuple(x for x in range(-40, 41, 2) if abs(x) > 6)
    report = check_density(ParticleConfig(positions=positions), 10, 30, 0.25, 0.75)
    assert not report.passed
    assert report.min_count == 0


def test_profile_configuration_density():
    profile = ProfileFunction.linear(2.0)
    lo, hi = profile.density_bounds
    assert check_density(from_profile(profile, 101), 10, 40, lo, hi).passed


def test_density_check_domain():
    a = packed(5)
    with pytest.raises(DomainError):
        check_density(a, 3, 10, 0.0, 0.5)
    with pytest.raises(DomainError):
        check_density(a, 12, 10, 0.2, 0.5)


def test_config_file(tmp_path):
    a = ParticleConfig.of(-3, 0, 7)
    path = tmp_path / "a.txt"
    write_config(a, path)
    assert path.read_text() == "-3\n0\n7\n"
    assert read_config(path) == a


def test_parse_config():
    assert parse_config("1\n\n4\n 9 \n").positions == (1, 4, 9)
    with pytest.raises(MonotonicityError):
        parse_config("3\n1\n")
    with pytest.raises(MonotonicityError):
        parse_config("\n")

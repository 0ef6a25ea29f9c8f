from fractions import Fraction

import numpy as np
import pytest

from noncolliding import NonColliding
from noncolliding.exceptions import DomainError, InstanceTooLargeError, TimeRangeError
from noncolliding.kernels import bernoulli_correlation
from noncolliding.modeling import ParticleConfig, SpaceTimePoint, WalkModel
from noncolliding.simulator import (
    empirical_correlation,
    exact_correlation_oracle,
    normalization_determinant,
    sample_ensemble,
    sample_trajectory,
    schur_oracle,
    step,
    substream,
    transition_law,
    vandermonde,
)
from noncolliding.simulator.transitions import as_fraction, jump_probability, step_positions

HALF = Fraction(1, 2)


def _law(*items):
    return {ParticleConfig(positions=k): Fraction(v) for k, v in items}


def test_single_particle_law():
    law = transition_law(ParticleConfig.of(4), Fraction(3, 10))
    assert law == _law(((5,), Fraction(3, 10)), ((4,), Fraction(7, 10)))


def test_adjacent_pair_law():
    law = transition_law(ParticleConfig.of(0, 1), HALF)
    assert law == _law(((0, 1), "1/4"), ((1, 2), "1/4"), ((0, 2), "1/2"))


def test_spread_pair_law():
    law = transition_law(ParticleConfig.of(0, 2), HALF)
    assert law == _law(((0, 2), "1/4"), ((1, 2), "1/8"), ((0, 3), "3/8"), ((1, 3), "1/4"))


@pytest.mark.parametrize("positions", [(0, 1), (0, 2), (-3, 0, 4), (0, 1, 2, 5)])
@pytest.mark.parametrize("beta", [Fraction(1, 3), HALF, Fraction(4, 5)])
def test_law_is_normalized(positions, beta):
    assert sum(transition_law(ParticleConfig(positions=positions), beta).values()) == 1


@pytest.mark.parametrize("positions", [(0, 1), (0, 2), (-1, 0, 3), (0, 2, 3, 7)])
def test_schur_oracle_matches_enumeration(positions):
    config = ParticleConfig(positions=positions)
    assert schur_oracle(config, Fraction(2, 5)) == transition_law(config, Fraction(2, 5))


def test_schur_oracle_size_limit():
    with pytest.raises(InstanceTooLargeError):
        schur_oracle(ParticleConfig(positions=tuple(range(5))), HALF)


def test_law_size_limit():
    with pytest.raises(InstanceTooLargeError):
        transition_law(ParticleConfig(positions=tuple(range(13))), HALF)


def test_vandermonde():
    assert vandermonde((0, 1, 3)) == 1 * 3 * 2
    assert vandermonde((5,)) == 1


@pytest.mark.parametrize("beta", [Fraction(1, 7), HALF, Fraction(9, 10)])
def test_normalization_determinant_is_beta_free(beta):
    x = (-2, 0, 3, 4)
    assert normalization_determinant(x, beta) == vandermonde(x)


@pytest.mark.parametrize("beta", [0.0, 1.0, -0.2])
def test_beta_domain(beta):
    with pytest.raises(DomainError):
        as_fraction(beta)


def test_exact_jump_probability():
    assert jump_probability((0, 2), (), HALF) == pytest.approx(3 / 8)
    assert jump_probability((0, 2), (1,), HALF) == pytest.approx(2 / 3)
    assert jump_probability((0, 1), (1,), HALF) == pytest.approx(1.0)
    assert jump_probability((0, 1), (0,), HALF) == pytest.approx(2 / 3)


@pytest.mark.parametrize("shifted,prefix", [((0, 2), ()), ((0, 2), (1,)), ((0, 3, 4, 9), (0, 1))])
def test_float_sampler_matches_exact(shifted, prefix):
    exact = jump_probability(shifted, prefix, Fraction(2, 5))
    NonColliding.init(float_sampler_min_particles=2)
    assert jump_probability(shifted, prefix, Fraction(2, 5)) == pytest.approx(exact, abs=1e-9)


def test_step_keeps_order():
    rng = np.random.default_rng(3)
    config = ParticleConfig.of(0, 1, 2, 6)
    for _ in range(25):
        after = step(config, 0.5, rng)
        increments = [b - a for a, b in zip(config.positions, after.positions)]
        assert set(increments) <= {0, 1}
        config = after


def test_packed_configuration_moves_together():
    # only the top particle of a block can leave first
    config = ParticleConfig.of(0, 1, 2)
    assert set(transition_law(config, HALF)) == {
        ParticleConfig.of(0, 1, 2), ParticleConfig.of(0, 1, 3), ParticleConfig.of(0, 2, 3), ParticleConfig.of(1, 2, 3)
    }


def test_substream_domain():
    with pytest.raises(DomainError):
        substream(-1, 0)
    with pytest.raises(DomainError):
        substream(2**64, 0)
    with pytest.raises(DomainError):
        substream(0, -1)


def test_trajectory_is_deterministic(two_walks):
    assert sample_trajectory(two_walks, 11) == sample_trajectory(two_walks, 11)


def test_trajectory_is_ensemble_head(two_walks):
    ensemble = sample_ensemble(two_walks, 11, 3)
    assert sample_trajectory(two_walks, 11) == ensemble.trajectory(0)


def test_ensemble_independent_of_threads():
    model = WalkModel(a=ParticleConfig.of(-2, 0, 3), beta=0.3, T=6)
    single = sample_ensemble(model, 2024, 40, threads=1)
    pooled = sample_ensemble(model, 2024, 40, threads=4)
    assert np.array_equal(single.positions, pooled.positions)


def test_trajectories_are_noncolliding():
    model = WalkModel(a=ParticleConfig.of(0, 1, 2, 3), beta=0.6, T=10)
    ensemble = sample_ensemble(model, 5, 20)
    assert ensemble.positions.shape == (20, 11, 4)
    assert np.all(np.diff(ensemble.positions, axis=2) > 0)
    assert set(np.unique(np.diff(ensemble.positions, axis=1))) <= {0, 1}
    assert np.array_equal(ensemble.positions[:, 0, :], np.tile([0, 1, 2, 3], (20, 1)))


def test_empty_ensemble(two_walks):
    with pytest.raises(DomainError):
        sample_ensemble(two_walks, 0, 0)


def test_empirical_correlation_of_no_points(two_walks):
    estimate = empirical_correlation(sample_ensemble(two_walks, 1, 10), [])
    assert estimate.mean == 1.0
    assert estimate.stderr == 0.0


def test_empirical_correlation_matches_oracle(two_walks):
    points = [SpaceTimePoint(t=1, x=1)]
    estimate = empirical_correlation(sample_ensemble(two_walks, 99, 2000), points)
    exact = float(exact_correlation_oracle(two_walks, points))
    assert abs(estimate.mean - exact) <= 4 * estimate.stderr + 1e-3


def test_empirical_correlation_horizon(two_walks):
    with pytest.raises(TimeRangeError):
        empirical_correlation(sample_ensemble(two_walks, 1, 2), [SpaceTimePoint(t=3, x=0)])


def test_oracle_two_walks(two_walks):
    assert exact_correlation_oracle(two_walks, [SpaceTimePoint(t=1, x=1)]) == Fraction(3, 8)


def test_oracle_initial_time(two_walks):
    assert exact_correlation_oracle(two_walks, [SpaceTimePoint(t=0, x=2)]) == 1
    assert exact_correlation_oracle(two_walks, [SpaceTimePoint(t=0, x=1)]) == 0


def test_oracle_single_walk(single_walk):
    # a lone particle is a plain Bernoulli walk
    assert exact_correlation_oracle(single_walk, [SpaceTimePoint(t=2, x=1)]) == Fraction(1, 2)
    assert exact_correlation_oracle(
        single_walk, [SpaceTimePoint(t=1, x=1), SpaceTimePoint(t=2, x=2)]
    ) == Fraction(1, 4)


def test_oracle_limits(two_walks):
    with pytest.raises(InstanceTooLargeError):
        exact_correlation_oracle(WalkModel(a=ParticleConfig.of(0, 1, 2, 3), beta=0.5, T=2), [])
    with pytest.raises(InstanceTooLargeError):
        exact_correlation_oracle(WalkModel(a=ParticleConfig.of(0), beta=0.5, T=6), [])
    with pytest.raises(TimeRangeError):
        exact_correlation_oracle(two_walks, [SpaceTimePoint(t=-1, x=0)])


@pytest.mark.slow
def test_mean_displacement_of_single_walk():
    model = WalkModel(a=ParticleConfig.of(0), beta=0.3, T=20)
    ensemble = sample_ensemble(model, 17, 5000, threads=2)
    displacement = ensemble.positions[:, -1, 0]
    stderr = displacement.std() / np.sqrt(ensemble.n)
    assert abs(displacement.mean() - 6.0) < 4 * stderr


def test_normalization_determinant_on_random_configurations():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.integers(1, 9))
        x = tuple(int(v) for v in np.sort(rng.choice(np.arange(-30, 31), size=n, replace=False)))
        beta = Fraction(int(rng.integers(1, 50)), 50)
        assert normalization_determinant(x, beta) == vandermonde(x)


@pytest.mark.slow
def test_step_frequencies():
    rng = np.random.default_rng(5)
    draws = 10**6
    counts: dict[tuple[int, ...], int] = {}
    for _ in range(draws):
        after = step_positions((0, 2), HALF, rng)
        counts[after] = counts.get(after, 0) + 1
    expected = {(0, 2): 0.25, (0, 3): 0.375, (1, 2): 0.125, (1, 3): 0.25}
    assert set(counts) == set(expected)
    for config, p in expected.items():
        stderr = np.sqrt(p * (1 - p) / draws)
        assert abs(counts[config] / draws - p) < 4 * stderr


@pytest.mark.slow
def test_empirical_correlations_against_determinants():
    model = WalkModel(a=ParticleConfig.of(0, 2, 4, 6, 8), beta=0.4, T=10)
    ensemble = sample_ensemble(model, 2024, 10**4, threads=4)
    queries = [[SpaceTimePoint(t=t, x=x)] for t, x in ((1, 1), (3, 4), (5, 6), (10, 11), (10, 14))]
    queries += [
        [SpaceTimePoint(t=2, x=2), SpaceTimePoint(t=2, x=3)],
        [SpaceTimePoint(t=4, x=5), SpaceTimePoint(t=6, x=7)],
        [SpaceTimePoint(t=10, x=9), SpaceTimePoint(t=10, x=12)],
    ]
    for points in queries:
        estimate = empirical_correlation(ensemble, points)
        exact = bernoulli_correlation(model, points)
        assert abs(estimate.mean - exact) <= 4 * estimate.stderr + 1e-3

import itertools
import math

import numpy as np
import pytest

from noncolliding.action import find_critical_point
from noncolliding.core import correlation_probability
from noncolliding.exceptions import DuplicatePointError, InvalidTimeError
from noncolliding.initial_data import ProfileFunction, from_profile, profile_density
from noncolliding.kernels import (
    bernoulli_correlation,
    k_bernoulli,
    k_bernoulli_shifted_contour,
    kernel_grid,
    w_residue_sum,
    w_residue_sum_by_quadrature,
)
from noncolliding.kernels.bernoulli import indicator_term
from noncolliding.modeling import KernelQuery, ParticleConfig, SpaceTimePoint, WalkModel
from noncolliding.simulator import exact_correlation_oracle


def _random_queries(model: WalkModel, count: int, seed: int) -> list[KernelQuery]:
    rng = np.random.default_rng(seed)
    lo, hi = model.a.positions[0] - 1, model.a.positions[-1] + model.T + 1
    queries = []
    while len(queries) < count:
        t1, t2 = (int(t) for t in rng.integers(1, model.T + 1, size=2))
        x1, x2 = (int(x) for x in rng.integers(lo, hi + 1, size=2))
        queries.append(KernelQuery.at(t1, x1, t2, x2))
    return queries


@pytest.mark.parametrize("x", [0, 1, 2])
def test_single_walk_binomial(single_walk, x):
    value = k_bernoulli(single_walk, KernelQuery.at(2, x, 2, x)).value
    assert value == pytest.approx(math.comb(2, x) / 4, abs=1e-12)


def test_two_walks_one_step(two_walks):
    result = k_bernoulli(two_walks, KernelQuery.at(1, 1, 1, 1))
    assert result.value == pytest.approx(0.375, abs=1e-12)
    assert abs(result.im_leak) < 1e-8 * (1 + abs(result.value))
    assert result.w_pole_list == [0]


def test_invalid_time(two_walks):
    with pytest.raises(InvalidTimeError):
        k_bernoulli(two_walks, KernelQuery.at(0, 0, 1, 0))


@pytest.mark.parametrize("t1,x1,t2,x2,expected", [
    (3, 2, 1, 1, 2),
    (3, 1, 1, 1, -1),
    (2, 0, 1, 1, 0),
    (1, 1, 2, 0, 0),
    (4, 4, 1, 1, 1),
])
def test_indicator_term(t1, x1, t2, x2, expected):
    assert indicator_term(KernelQuery.at(t1, x1, t2, x2)) == expected


def test_residue_sum_against_quadrature():
    model = WalkModel(a=ParticleConfig.of(-3, -1, 0, 2, 5), beta=0.35, T=6)
    rng = np.random.default_rng(7)
    for q in _random_queries(model, 100, seed=11):
        z = complex(q.x2 - q.t2 + 0.5, float(rng.normal(scale=2.0)))
        expected = w_residue_sum_by_quadrature(model, q, z)
        assert abs(w_residue_sum(model, q, z) - expected) < 1e-9 * max(1.0, abs(expected))


@pytest.mark.parametrize("a", [(0,), (0, 2), (-2, 0, 1, 4), (-5, -3, -2, 1, 2, 6)])
def test_shifted_contour(a):
    model = WalkModel(a=ParticleConfig(positions=a), beta=0.45, T=4)
    for q in _random_queries(model, 20, seed=len(a)):
        first = k_bernoulli(model, q).value
        second = k_bernoulli_shifted_contour(model, q).value
        assert first == pytest.approx(second, abs=1e-9)


def test_shifted_contour_straddling_particles():
    model = WalkModel(a=ParticleConfig.of(-1, 0, 1, 2), beta=0.5, T=3)
    # Re z = x2 - t2 + 1/2 and x2 - 1/2 lie on both sides of the particles -1, 0 and 1
    for q in [KernelQuery.at(3, 1, 3, 2), KernelQuery.at(2, 0, 3, 1), KernelQuery.at(3, 2, 2, 1)]:
        assert k_bernoulli(model, q).value == pytest.approx(k_bernoulli_shifted_contour(model, q).value, abs=1e-9)


def test_line_contour(two_walks):
    result = k_bernoulli(two_walks, KernelQuery.at(2, 2, 2, 2), contour="line")
    assert result.method == "line"
    assert result.value == pytest.approx(k_bernoulli(two_walks, KernelQuery.at(2, 2, 2, 2)).value, abs=1e-12)


def test_saddle_contour():
    model = WalkModel(a=from_profile(ProfileFunction.linear(2.0), 51), beta=0.5, T=10)
    for q in [KernelQuery.at(10, 0, 10, 0), KernelQuery.at(10, 1, 9, 0), KernelQuery.at(9, -2, 10, 0)]:
        saddle = k_bernoulli(model, q, contour="saddle")
        assert saddle.method == "saddle"
        assert saddle.value == pytest.approx(k_bernoulli(model, q, contour="line").value, abs=1e-8)


def test_correlation_against_oracle(two_walks):
    points = [SpaceTimePoint(t=1, x=1), SpaceTimePoint(t=2, x=2)]
    assert bernoulli_correlation(two_walks, points) == pytest.approx(
        float(exact_correlation_oracle(two_walks, points)), abs=1e-10
    )


def test_same_time_pair_against_oracle():
    model = WalkModel(a=ParticleConfig.of(0, 1, 3), beta=0.4, T=3)
    points = [SpaceTimePoint(t=3, x=1), SpaceTimePoint(t=3, x=3)]
    assert bernoulli_correlation(model, points) == pytest.approx(
        float(exact_correlation_oracle(model, points)), abs=1e-10
    )


def test_correlation_duplicates(two_walks):
    point = SpaceTimePoint(t=1, x=1)
    with pytest.raises(DuplicatePointError):
        bernoulli_correlation(two_walks, [point, point])


def test_kernel_grid_diagonal():
    profile = ProfileFunction.linear(2.0)
    model = WalkModel(a=from_profile(profile, 101), beta=0.5, T=math.floor(101**0.6))
    slope = find_critical_point(model, profile=profile_density(profile)).slope
    rows = kernel_grid(model, slope, [0], [0])
    assert len(rows) == 1
    assert rows[0].abs_err == pytest.approx(abs(rows[0].k_finite - slope.q), abs=1e-9)


@pytest.mark.slow
def test_universality_gap_decreases():
    profile = ProfileFunction.linear(2.0)
    density = profile_density(profile)
    gaps, diagonals = [], []
    for n in (201, 801, 3201):
        model = WalkModel(a=from_profile(profile, n), beta=0.5, T=math.floor(n**0.6))
        slope = find_critical_point(model, profile=density).slope
        rows = kernel_grid(model, slope, range(-3, 4), range(-3, 4))
        gaps.append(max(row.abs_err for row in rows))
        diagonals.append(k_bernoulli(model, KernelQuery.at(model.T, 0, model.T, 0)).value)
    assert gaps[0] > gaps[1] > gaps[2]
    diagonal_errors = [abs(d - 0.5) for d in diagonals]
    assert diagonal_errors[0] > diagonal_errors[1] > diagonal_errors[2]


@pytest.mark.parametrize(
    "a,T",
    [
        ((0, 1, 3), 10),
        ((-4, -1, 0, 2, 5, 6), 20),
        pytest.param(tuple(range(0, 20, 2)), 30, marks=pytest.mark.slow),
    ],
)
def test_particle_count_trace(a, T):
    model = WalkModel(a=ParticleConfig(positions=a), beta=0.4, T=T)
    for t in (1, T // 2, T):
        trace = sum(k_bernoulli(model, KernelQuery.at(t, x, t, x)).value for x in range(a[0], a[-1] + t + 1))
        assert trace == pytest.approx(len(a), abs=1e-8)


ORACLE_MODEL = WalkModel(a=ParticleConfig.of(0, 2), beta=0.5, T=3)
ORACLE_POINTS = [SpaceTimePoint(t=t, x=x) for t in range(1, 4) for x in range(0, 6)]
ORACLE_POINT_SETS = [[p] for p in ORACLE_POINTS] + [list(pair) for pair in itertools.combinations(ORACLE_POINTS, 2)]
_oracle_kernel_values: dict[tuple[int, int, int, int], float] = {}


def _oracle_kernel(q: KernelQuery) -> float:
    key = (q.t1, q.x1, q.t2, q.x2)
    if key not in _oracle_kernel_values:
        _oracle_kernel_values[key] = k_bernoulli(ORACLE_MODEL, q).value
    return _oracle_kernel_values[key]


@pytest.mark.parametrize("points", ORACLE_POINT_SETS, ids=lambda ps: "-".join(f"{p.t}.{p.x}" for p in ps))
def test_every_small_correlation_against_oracle(points):
    assert correlation_probability(_oracle_kernel, points) == pytest.approx(
        float(exact_correlation_oracle(ORACLE_MODEL, points)), abs=1e-10
    )

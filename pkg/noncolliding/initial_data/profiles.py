"""Deterministic initial configurations."""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize

from noncolliding.exceptions import DomainError, InvalidProfileError, MonotonicityError, ParameterError
from noncolliding.modeling import DensityProfile, ParticleConfig

GRID_POINTS = 10_000
BISECTION_TOLERANCE = 1e-14
SNAP_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ProfileFunction:
    """
    Increasing profile f on [-1/2, 1/2] with f' > 1 and a sign change.

    Attributes:
        f: The profile.
        df: Its derivative.
        min_slope: Smallest f' seen on the validation grid.
        max_slope: Largest f' seen on the validation grid.
    """
    f: Callable[[float], float]
    df: Callable[[float], float]
    min_slope: float = field(init=False)
    max_slope: float = field(init=False)

    def __post_init__(self) -> None:
        grid = np.linspace(-0.5, 0.5, GRID_POINTS)
        slopes = np.array([self.df(float(x)) for x in grid])
        if not np.all(slopes > 1):
            raise InvalidProfileError(f"f' must exceed 1 on [-1/2, 1/2], minimum is {slopes.min():g}.")
        if not self.f(-0.5) < 0 < self.f(0.5):
            raise InvalidProfileError("f must change sign on [-1/2, 1/2].")
        object.__setattr__(self, "min_slope", float(slopes.min()))
        object.__setattr__(self, "max_slope", float(slopes.max()))

    @classmethod
    def linear(cls, slope: float, intercept: float = 0.0) -> "ProfileFunction":
        return cls(f=lambda x: slope * x + intercept, df=lambda x: slope)

    @property
    def chi(self) -> float:
        """The zero of f, by bisection."""
        return float(optimize.bisect(self.f, -0.5, 0.5, xtol=BISECTION_TOLERANCE))

    @property
    def q(self) -> float:
        """Local density 1 / f'(chi) at the origin."""
        return 1 / self.df(self.chi)

    @property
    def density_bounds(self) -> tuple[float, float]:
        """Window density bounds (1 / (2 max f'), 1/2 + 1 / (2 min f')) met by `from_profile`."""
        return 1 / (2 * self.max_slope), 0.5 + 1 / (2 * self.min_slope)

    def pushforward(self, n_pieces: int = 1000) -> DensityProfile:
        """
        Global density dv / f'(f^{-1}(v)) on [f(-1/2), f(1/2)], with n_pieces pieces of mass 1 / n_pieces.

        Args:
            n_pieces: Number of pieces.

        Returns:
            A probability DensityProfile with zero tails.
        """
        if n_pieces < 1:
            raise DomainError("pushforward needs at least one piece.")
        edges = [self.f(x) for x in np.linspace(-0.5, 0.5, n_pieces + 1)]
        pieces = tuple(
            (float(lo), float(hi), 1 / (n_pieces * (hi - lo))) for lo, hi in zip(edges, edges[1:])
        )
        return DensityProfile(pieces=pieces, left_tail_rho=0.0, right_tail_rho=0.0)


def packed(N: int) -> ParticleConfig:  # noqa: N803
    """Densely packed configuration (0, 1, ..., N - 1)."""
    if N < 1:
        raise DomainError("A configuration holds at least one particle.")
    return ParticleConfig(positions=tuple(range(N)))


def _floor(value: float) -> int:
    nearest = round(value)
    if abs(value - nearest) < SNAP_TOLERANCE:
        return int(nearest)
    return math.floor(value)


def from_profile(p: ProfileFunction, N: int) -> ParticleConfig:  # noqa: N803
    """
    Configuration a_i = floor(N f(i / N)) for i = -(N - 1)/2, ..., (N - 1)/2.

    Values within 1e-9 of an integer are snapped to it before flooring.

    Args:
        p: Profile.
        N: Odd number of particles.

    Returns:
        The configuration.
    """
    if N < 1 or N % 2 == 0:
        raise DomainError(f"N must be a positive odd integer, got {N}.")
    half = (N - 1) // 2
    positions = tuple(_floor(N * p.f(i / N)) for i in range(-half, half + 1))
    if any(b <= a for a, b in zip(positions, positions[1:])):
        raise MonotonicityError("Floors of the profile collide; f' > 1 is violated.")
    return ParticleConfig(positions=positions)


def staircase_config(N: int, T: int, h: float) -> ParticleConfig:  # noqa: N803
    """
    floor(N/2) particles at -2, -4, ..., floor(hT) particles on every third site 1, 4, ..., then every other site.

    Args:
        N: Number of particles.
        T: Observation time.
        h: Relative length of the sparse block.

    Returns:
        The configuration.
    """
    if N < 1 or T < 1 or h <= 0:
        raise DomainError("staircase_config needs N, T >= 1 and h > 0.")
    negatives, block = N // 2, math.floor(h * T)
    if negatives + block > N:
        raise ParameterError(f"floor(hT) + floor(N/2) = {negatives + block} exceeds N = {N}.")
    rest = N - negatives - block
    left = [-2 * k for k in range(negatives, 0, -1)]
    middle = [3 * k + 1 for k in range(block)]
    right = [3 * block + 2 + 2 * k for k in range(rest)]
    return ParticleConfig(positions=tuple(left + middle + right))

"""
Limit slopes of the local statistics.

The limit action is

    S*'(z) = int (1/(z - v) + 1_{|v| > R} / v) mu(dv) - d(R) + log(z + 1) - log z + i pi - log(1/beta - 1)

for a piecewise-constant local density mu, and the complex slope is u* = z*/(1 + z*) at its unique
upper half plane root z*.
"""

import cmath
import math
from collections.abc import Iterator
from functools import lru_cache

import numpy as np

from noncolliding.core.roots import count_zeros_in_rectangle
from noncolliding.exceptions import DomainError, MultipleRootError, NoRootError
from noncolliding.log import logger
from noncolliding.modeling import ComplexSlope, DensityProfile

RESIDUAL_TOLERANCE = 1e-10
MAX_NEWTON_STEPS = 200
COUNT_BOX = (-200.0, 200.0, 1e-4, 200.0)


def _check_beta(beta: float) -> None:
    if not 0 < beta < 1:
        raise DomainError(f"beta must lie in (0, 1), got {beta}.")


def _split(segment: tuple[float, float, float], cutoff: float) -> Iterator[tuple[float, float, float, str]]:
    """Cut a segment at -R and R; tags are 'inner', 'right' (v >= R) and 'left' (v <= -R)."""
    lo, hi, rho = segment
    for part_lo, part_hi, tag in ((-math.inf, -cutoff, "left"), (-cutoff, cutoff, "inner"), (cutoff, math.inf, "right")):
        p, q = max(lo, part_lo), min(hi, part_hi)
        if p < q and rho > 0:
            yield p, q, rho, tag


def _tail_integral(profile: DensityProfile, r_from: float, r_to: float) -> float:
    """Integral of mu(dv)/v over r_from <= |v| < r_to (r_from <= r_to)."""
    total = 0.0
    for segment in profile.segments():
        for p, q, rho, tag in _split(segment, r_from):
            if tag == "right":
                q = min(q, r_to)
                if p < q:
                    total += rho * math.log(q / p)
            elif tag == "left":
                p = max(p, -r_to)
                if p < q:
                    total += rho * (math.log(-q) - math.log(-p))
    return total


def drift_at(profile: DensityProfile, cutoff: float) -> float:
    """Drift d(R) at another cutoff R, converted from the stored reference cutoff."""
    if cutoff <= 0:
        raise DomainError("The drift cutoff must be positive.")
    reference = profile.drift_cutoff
    if cutoff >= reference:
        return profile.drift - _tail_integral(profile, reference, cutoff)
    return profile.drift + _tail_integral(profile, cutoff, reference)


def _regularized_integral(profile: DensityProfile, cutoff: float, z: complex) -> tuple[complex, complex]:
    """The mu-integral of S*' and its z-derivative."""
    value = 0j
    derivative = 0j
    for segment in profile.segments():
        for p, q, rho, tag in _split(segment, cutoff):
            if tag == "inner":
                value += rho * (cmath.log(z - p) - cmath.log(z - q))
                derivative += rho * (1 / (z - p) - 1 / (z - q))
            elif tag == "right":
                upper = 1j * math.pi if math.isinf(q) else cmath.log(z - q) - math.log(q)
                value += rho * (cmath.log(z - p) - math.log(p) - upper)
                derivative += rho * (1 / (z - p) - (0 if math.isinf(q) else 1 / (z - q)))
            else:
                lower = 0j if math.isinf(p) else cmath.log(z - p) - math.log(-p)
                value += rho * (lower - cmath.log(z - q) + math.log(-q))
                derivative += rho * ((0 if math.isinf(p) else 1 / (z - p)) - 1 / (z - q))
    return value, derivative


def limit_action_prime(profile: DensityProfile, beta: float, cutoff: float, z: complex) -> complex:
    """
    Derivative S*' of the limit action.

    Args:
        profile: Local density and drift.
        beta: Jump probability.
        cutoff: Regularization cutoff R > 0.
        z: Point of the upper half plane.

    Returns:
        S*'(z), independent of the cutoff.
    """
    _check_beta(beta)
    if not z.imag > 0:
        raise DomainError("S*' is evaluated in the upper half plane.")
    integral, _ = _regularized_integral(profile, cutoff, z)
    log_odds = math.log(1 / beta - 1)
    return integral - drift_at(profile, cutoff) + cmath.log(z + 1) - cmath.log(z) + 1j * math.pi - log_odds


def _limit_action_second(profile: DensityProfile, z: complex) -> complex:
    _, derivative = _regularized_integral(profile, profile.drift_cutoff, z)
    return derivative + 1 / (z + 1) - 1 / z


def _local_density(profile: DensityProfile) -> float:
    density = profile.density_at(0.0)
    if not 0 < density < 1:
        raise NoRootError(f"Local density {density} at the origin is degenerate.")
    return density


def _newton_limit(profile: DensityProfile, beta: float, start: complex) -> complex:
    cutoff = profile.drift_cutoff
    z = start
    for _ in range(MAX_NEWTON_STEPS):
        value = limit_action_prime(profile, beta, cutoff, z)
        if abs(value) < 1e-14:
            break
        step = value / _limit_action_second(profile, z)
        trial = z - step
        while trial.imag <= 0:
            step /= 2
            trial = z - step
        z = trial
        if abs(step) < 1e-15 * max(1.0, abs(z)):
            break
    return z


def count_limit_roots(profile: DensityProfile, beta: float) -> int:
    """Zeros of S*' in a large rectangle of the upper half plane."""
    cutoff = profile.drift_cutoff

    def action(z: np.ndarray) -> np.ndarray:
        return np.array([limit_action_prime(profile, beta, cutoff, complex(v)) for v in z.ravel()]).reshape(z.shape)

    return count_zeros_in_rectangle(action, *COUNT_BOX, initial_points=400)


@lru_cache(maxsize=1024)
def solve_limit_slope(profile: DensityProfile, beta: float, certify: bool = True) -> ComplexSlope:
    """
    Complex slope of the limit local statistics.

    Newton iterations on S*' start from the Lebesgue slope of the density at the origin; the root
    is certified unique by counting the zeros of S*' in a large upper half plane rectangle.

    Args:
        profile: Local density and drift.
        beta: Jump probability.
        certify: Whether to count the roots.

    Returns:
        The slope u* = z*/(1 + z*).
    """
    _check_beta(beta)
    start, _ = slope_lebesgue(beta, drift_at(profile, 1.0), _local_density(profile))
    candidates = [start.z, complex(-0.5, 0.5), complex(0.0, 1.0), complex(-1.0, 2.0)]
    root = None
    for candidate in candidates:
        z = _newton_limit(profile, beta, candidate)
        if abs(limit_action_prime(profile, beta, profile.drift_cutoff, z)) < RESIDUAL_TOLERANCE:
            root = z
            break
    if root is None:
        raise NoRootError("The slope equation has no root reachable from the Lebesgue prediction.")
    if certify:
        count = count_limit_roots(profile, beta)
        if count == 0:
            raise NoRootError("The slope equation has no root in the upper half plane.")
        if count > 1:
            raise MultipleRootError(f"The slope equation has {count} roots in the upper half plane.")
    logger.debug(f"Limit slope root z* = {root:.12g} for beta={beta}.")
    return ComplexSlope.from_critical_point(root)


def beta_effective(beta: float, d: float) -> float:
    """Effective jump probability 1 / (1 + e^d (1/beta - 1)) absorbing the drift."""
    _check_beta(beta)
    return 1 / (1 + math.exp(d) * (1 / beta - 1))


def slope_lebesgue(beta: float, d: float, q: float) -> tuple[ComplexSlope, float]:
    """
    Closed-form slope for a constant density q.

    Args:
        beta: Jump probability.
        d: Drift.
        q: Density in (0, 1).

    Returns:
        The slope u* = beta e^{-d} / (1 - beta) e^{i pi (1 - q)} and beta_eff.
    """
    _check_beta(beta)
    if not 0 < q < 1:
        raise DomainError(f"Density must lie in (0, 1), got {q}.")
    if not math.isfinite(d):
        raise DomainError("Drift must be finite.")
    u = beta * math.exp(-d) / (1 - beta) * cmath.exp(1j * math.pi * (1 - q))
    return ComplexSlope(u=u), beta_effective(beta, d)


def staircase_residual(beta: float, h: float, u: complex) -> float:
    """|(1 - 3h(1-u)/u)^{1/6} - i u (1 - 1/beta)| with the principal sixth root."""
    return abs(np.power(complex(1 - 3 * h * (1 - u) / u), 1 / 6) - 1j * u * (1 - 1 / beta))


def slope_staircase(beta: float, h: float) -> ComplexSlope:
    """
    Slope of the staircase initial data (density 1/2, then 1/3 on (0, 3h), then 1/2).

    Args:
        beta: Jump probability.
        h: Length parameter of the density-1/3 block.

    Returns:
        The root of the sixth-root equation in the upper half plane.
    """
    _check_beta(beta)
    if not h > 0:
        raise DomainError("h must be positive.")
    slope = solve_limit_slope(DensityProfile.staircase(h), beta)
    residual = staircase_residual(beta, h, slope.u)
    if residual >= RESIDUAL_TOLERANCE:
        raise NoRootError(f"Staircase slope residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE}.")
    return slope


def slope_bernoulli_ic(beta: float, p: float, alpha: float) -> ComplexSlope:
    """Slope for Bernoulli(p) initial data on a window split alpha : 1 - alpha around the origin."""
    if not 0 < p < 1 or not 0 < alpha < 1:
        raise DomainError("p and alpha must lie in (0, 1).")
    slope, _ = slope_lebesgue(beta, p * math.log(alpha / (1 - alpha)), p)
    return slope


def slope_sine_ic(beta: float, phi: float, alpha: float) -> ComplexSlope:
    """Slope for discrete sine initial data of density phi/pi on a window split alpha : 1 - alpha."""
    if not 0 < phi < math.pi or not 0 < alpha < 1:
        raise DomainError("phi must lie in (0, pi) and alpha in (0, 1).")
    q = phi / math.pi
    slope, _ = slope_lebesgue(beta, q * math.log(alpha / (1 - alpha)), q)
    return slope

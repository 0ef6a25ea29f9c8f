"""
One step of the noncolliding Bernoulli walk.

From x every subset of particles jumps by one with probability

    V(x + eps) / V(x) beta^{|eps|} (1 - beta)^{N - |eps|},    V(x) = prod_{i<j} (x_j - x_i).

`step` samples the particles one after another. Given the increments already chosen, the remaining
sum over increments is a single determinant whose uncommitted rows are averaged,
(1 - beta) row(x_i) + beta row(x_i + 1), so each conditional jump probability is a ratio of two
determinants. With beta = p / q the averaged rows are scaled by q and every determinant is an
integer computed by fraction-free elimination.
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from numpy.polynomial import chebyshev, legendre
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from noncolliding._noncolliding import NonColliding
from noncolliding.exceptions import ConditioningError, DomainError, InstanceTooLargeError
from noncolliding.log import logger
from noncolliding.modeling import ParticleConfig
from noncolliding.status_messages import FloatSamplerFallbackWarning

Rational = Union[Fraction, float]

MAX_LAW_PARTICLES = 12
CROSS_CHECK_TOLERANCE = 1e-9


def as_fraction(beta: Rational) -> Fraction:
    """Jump probability as an exact rational in (0, 1)."""
    value = beta if isinstance(beta, Fraction) else Fraction(beta).limit_denominator(10**9)
    if not 0 < value < 1:
        raise DomainError(f"beta must lie in (0, 1), got {beta}.")
    return value


def vandermonde(x: tuple[int, ...]) -> int:
    """V(x) = prod_{i<j} (x_j - x_i)."""
    return math.prod(x[j] - x[i] for i, j in itertools.combinations(range(len(x)), 2))


def _monomial_row(x: int, n: int) -> list[int]:
    return [x**j for j in range(n)]


@lru_cache(maxsize=1 << 16)
def _integer_det(rows: tuple[tuple[int, ...], ...]) -> int:
    n = len(rows)
    return int(DomainMatrix([[ZZ(v) for v in row] for row in rows], (n, n), ZZ).det())


def _averaged_row(x: int, n: int, beta: Fraction) -> tuple[int, ...]:
    p, q = beta.numerator, beta.denominator
    return tuple((q - p) * x**j + p * (x + 1) ** j for j in range(n))


def normalization_determinant(x: tuple[int, ...], beta: Rational) -> Fraction:
    """
    det[(1 - beta) x_i^{j-1} + beta (x_i + 1)^{j-1}], which equals V(x) for every beta.

    Args:
        x: Strictly increasing positions.
        beta: Jump probability.

    Returns:
        The determinant as an exact rational.
    """
    beta = as_fraction(beta)
    n = len(x)
    rows = tuple(_averaged_row(xi, n, beta) for xi in x)
    return Fraction(_integer_det(rows), beta.denominator**n)


def transition_law(config: ParticleConfig, beta: Rational) -> dict[ParticleConfig, Fraction]:
    """
    Exact one-step law by enumeration of the 2^N jump subsets.

    Args:
        config: Current configuration.
        beta: Jump probability.

    Returns:
        Probability of every reachable configuration.
    """
    if config.n > MAX_LAW_PARTICLES:
        raise InstanceTooLargeError(f"Enumerating 2^N jump subsets is limited to N <= {MAX_LAW_PARTICLES}.")
    beta = as_fraction(beta)
    v = vandermonde(config.positions)
    law: dict[ParticleConfig, Fraction] = {}
    for eps in itertools.product((0, 1), repeat=config.n):
        moved = tuple(x + e for x, e in zip(config.positions, eps))
        weight = vandermonde(moved)
        if weight == 0:
            continue
        jumps = sum(eps)
        law[ParticleConfig(positions=moved)] = (
            Fraction(weight, v) * beta**jumps * (1 - beta) ** (config.n - jumps)
        )
    return law


@lru_cache(maxsize=1 << 18)
def _exact_jump_probability(shifted: tuple[int, ...], prefix: tuple[int, ...], beta: Fraction) -> Fraction:
    n, k = len(shifted), len(prefix)
    committed = [_monomial_row(x + e, n) for x, e in zip(shifted, prefix)]
    averaged = [_averaged_row(x, n, beta) for x in shifted[k + 1:]]

    def det(choice: int) -> int:
        rows = committed + [_monomial_row(shifted[k] + choice, n)] + averaged
        return _integer_det(tuple(tuple(r) for r in rows))

    jump, stay = det(1), det(0)
    total = beta * jump + (1 - beta) * stay
    if total <= 0:
        raise ConditioningError(f"Conditional weights vanish for particle {k} of {shifted}.")
    return beta * jump / total


def _float_rows(
    basis: str, points: np.ndarray, center: float, half_width: float, n: int
) -> np.ndarray:
    scaled = (points - center) / half_width
    vander = chebyshev.chebvander if basis == "chebyshev" else legendre.legvander
    return vander(scaled, n - 1)


def _float_jump_probability(shifted: tuple[int, ...], prefix: tuple[int, ...], beta: float, basis: str) -> float:
    n, k = len(shifted), len(prefix)
    positions = np.asarray(shifted, dtype=float)
    center = 0.5 * (positions[0] + positions[-1] + 1)
    half_width = max(0.5 * (positions[-1] + 1 - positions[0]), 1.0)
    committed = positions[:k] + np.asarray(prefix, dtype=float)
    rest = positions[k + 1:]

    def signed_log_det(choice: int) -> tuple[float, float]:
        top = _float_rows(basis, np.append(committed, positions[k] + choice), center, half_width, n)
        averaged = (1 - beta) * _float_rows(basis, rest, center, half_width, n) + beta * _float_rows(
            basis, rest + 1, center, half_width, n
        )
        sign, log_abs = np.linalg.slogdet(np.vstack([top, averaged]))
        return float(sign), float(log_abs)

    (s_jump, l_jump), (s_stay, l_stay) = signed_log_det(1), signed_log_det(0)
    finite = [v for s, v in ((s_jump, l_jump), (s_stay, l_stay)) if s != 0]
    if not finite:
        raise ConditioningError(f"Both conditional determinants vanish for particle {k} of {shifted}.")
    ref = max(finite)
    jump = beta * max(s_jump, 0.0) * math.exp(l_jump - ref) if s_jump else 0.0
    stay = (1 - beta) * max(s_stay, 0.0) * math.exp(l_stay - ref) if s_stay else 0.0
    if jump + stay <= 0:
        raise ConditioningError(f"Conditional weights are not positive for particle {k} of {shifted}.")
    return jump / (jump + stay)


def jump_probability(shifted: tuple[int, ...], prefix: tuple[int, ...], beta: Fraction) -> float:
    """
    Probability that the next particle jumps given the increments `prefix` of the particles before it.

    Positions must be shifted so that the first particle sits at 0. From
    `NonColliding.config.float_sampler_min_particles` particles on, the determinants are taken in
    floating point in the Chebyshev basis and cross-checked in the Legendre basis; a disagreement
    falls back to exact arithmetic.

    Args:
        shifted: Current positions minus the first one.
        prefix: Increments already drawn for the first len(prefix) particles.
        beta: Jump probability.

    Returns:
        The conditional jump probability.
    """
    if len(shifted) < NonColliding.config.float_sampler_min_particles:
        return float(_exact_jump_probability(shifted, prefix, beta))
    b = float(beta)
    try:
        first = _float_jump_probability(shifted, prefix, b, "chebyshev")
        second = _float_jump_probability(shifted, prefix, b, "legendre")
    except (ConditioningError, FloatingPointError) as error:
        logger.debug(f"Float sampler failed on {shifted}: {error}")
    else:
        if abs(first - second) <= CROSS_CHECK_TOLERANCE:
            return first
    logger.warning_once(str(FloatSamplerFallbackWarning()))
    return float(_exact_jump_probability(shifted, prefix, beta))


def step_positions(positions: tuple[int, ...], beta: Fraction, rng: np.random.Generator) -> tuple[int, ...]:
    """One exact step on bare positions, sampled particle by particle."""
    origin = positions[0]
    shifted = tuple(x - origin for x in positions)
    prefix: list[int] = []
    for _ in positions:
        prob = jump_probability(shifted, tuple(prefix), beta)
        prefix.append(1 if rng.random() < prob else 0)
    return tuple(x + e for x, e in zip(positions, prefix))


def step(config: ParticleConfig, beta: Rational, rng: Optional[np.random.Generator] = None) -> ParticleConfig:
    """
    Sample the next configuration of the walk.

    Args:
        config: Current configuration.
        beta: Jump probability, used as an exact rational.
        rng: Random generator (a fresh unseeded one if omitted).

    Returns:
        The configuration after one step.
    """
    rng = rng if rng is not None else np.random.default_rng()
    return ParticleConfig(positions=step_positions(config.positions, as_fraction(beta), rng))

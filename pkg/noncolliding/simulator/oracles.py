"""Exact small-instance references for the sampler and the kernel."""

from collections import defaultdict
from collections.abc import Sequence
from fractions import Fraction

import sympy

from noncolliding.exceptions import InstanceTooLargeError, TimeRangeError
from noncolliding.modeling import ParticleConfig, SpaceTimePoint, WalkModel
from noncolliding.simulator.transitions import Rational, as_fraction, transition_law, vandermonde

ORACLE_MAX_PARTICLES = 3
ORACLE_MAX_TIME = 5
SCHUR_MAX_PARTICLES = 4


def exact_correlation_oracle(model: WalkModel, points: Sequence[SpaceTimePoint]) -> Fraction:
    """
    Probability that the trajectory passes through every point, by forward dynamic programming.

    Args:
        model: Walk with N <= 3 and T <= 5; beta is read as a rational.
        points: Space-time points with 0 <= t <= T.

    Returns:
        The exact probability.
    """
    if model.N > ORACLE_MAX_PARTICLES or model.T > ORACLE_MAX_TIME:
        raise InstanceTooLargeError(
            f"The dynamic programming oracle is limited to N <= {ORACLE_MAX_PARTICLES}, T <= {ORACLE_MAX_TIME}."
        )
    for p in points:
        if not 0 <= p.t <= model.T:
            raise TimeRangeError(f"Point at t={p.t} outside [0, {model.T}].")

    beta = model.rational_beta
    by_time: dict[int, list[int]] = defaultdict(list)
    for p in points:
        by_time[p.t].append(p.x)
    horizon = max(by_time, default=0)

    mass: dict[ParticleConfig, Fraction] = {model.a: Fraction(1)}
    for t in range(horizon + 1):
        required = by_time.get(t, [])
        mass = {c: w for c, w in mass.items() if all(x in c for x in required)}
        if t == horizon:
            break
        after: dict[ParticleConfig, Fraction] = defaultdict(Fraction)
        for config, weight in mass.items():
            for target, prob in transition_law(config, beta).items():
                after[target] += weight * prob
        mass = after
    return sum(mass.values(), Fraction(0))


def schur_oracle(config: ParticleConfig, beta: Rational) -> dict[ParticleConfig, Fraction]:
    """
    One-step law from the character expansion of s_lambda(u) prod_r (beta u_r + 1 - beta).

    The product times the alternant det[u_i^{x_j}] is antisymmetric; its coefficient at the
    monomial u_1^{y_1} ... u_N^{y_N} (y increasing) weighs the target y, normalized by
    s_mu(1^N) / s_lambda(1^N) = V(y) / V(x).

    Args:
        config: Configuration with N <= 4.
        beta: Jump probability.

    Returns:
        The one-step law.
    """
    if config.n > SCHUR_MAX_PARTICLES:
        raise InstanceTooLargeError(f"The character oracle is limited to N <= {SCHUR_MAX_PARTICLES}.")
    beta = as_fraction(beta)
    b = sympy.Rational(beta.numerator, beta.denominator)
    origin = config.positions[0]
    exponents = [x - origin for x in config.positions]
    u = sympy.symbols(f"u1:{config.n + 1}")

    alternant = sympy.Matrix(config.n, config.n, lambda i, j: u[i] ** exponents[j]).det()
    product = sympy.prod([b * ui + 1 - b for ui in u])
    poly = sympy.Poly(sympy.expand(alternant * product), *u)

    v = vandermonde(tuple(exponents))
    law: dict[ParticleConfig, Fraction] = {}
    for monomial, coefficient in poly.terms():
        if any(m2 <= m1 for m1, m2 in zip(monomial, monomial[1:])):
            continue
        c = Fraction(int(coefficient.p), int(coefficient.q))
        if c == 0:
            continue
        target = tuple(m + origin for m in monomial)
        law[ParticleConfig(positions=target)] = c * Fraction(vandermonde(tuple(monomial)), v)
    return law

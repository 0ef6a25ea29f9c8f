"""
Continuous-time limit of the walk: N Poisson walks of rate one conditioned never to collide.

    K(tau1, x1; tau2, x2) = -1_{x1>=x2} 1_{tau1>tau2} (tau1 - tau2)^{x1-x2} / (x1-x2)!
                            - (1 / 2 pi i) int_{Re z = x2 - 1/2} Gamma(x2 - z) tau2^{z-x2}
                              prod_r (z - a_r) sum_j R_j / (a_j - z) dz

with R_j = tau1^{x1-a_j} / ((x1-a_j)! prod_{r!=j} (a_j - a_r)) the residues of the w-integrand at the
poles a_j <= x1.
"""

import math
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy.special import rgamma

from noncolliding._noncolliding import quadrature_settings
from noncolliding.core.quadrature import circle_quadrature, integrate_vertical_line
from noncolliding.core.special import log_gamma
from noncolliding.exceptions import QuadratureError
from noncolliding.modeling import ParticleConfig, QuadratureSettings, RealTimeQuery

MAX_EXPONENT = 700.0


def poisson_indicator(q: RealTimeQuery) -> float:
    """(tau1 - tau2)^{x1-x2} / (x1 - x2)! when x1 >= x2 and tau1 > tau2, else 0."""
    if q.x1 < q.x2 or q.tau1 <= q.tau2:
        return 0.0
    k = q.x1 - q.x2
    return math.exp(k * math.log(q.tau1 - q.tau2) - math.lgamma(k + 1))


def poisson_w_poles(a: ParticleConfig, x1: int) -> list[int]:
    """Poles {..., x1 - 1, x1} ∩ a of the w-integrand."""
    return [m for m in a.positions if m <= x1]


def _residues(a: ParticleConfig, tau1: float, x1: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    poles = poisson_w_poles(a, x1)
    positions = a.array
    log_abs = np.empty(len(poles))
    signs = np.empty(len(poles))
    for k, m in enumerate(poles):
        others = positions[positions != m] - m
        log_abs[k] = (x1 - m) * math.log(tau1) - math.lgamma(x1 - m + 1) - float(np.sum(np.log(np.abs(others))))
        # prod_{r!=j} (a_j - a_r) is negative once per a_r > a_j
        signs[k] = (-1) ** int(np.count_nonzero(others > 0))
    return np.asarray(poles, dtype=float), log_abs, signs


def poisson_w_residue_sum(a: ParticleConfig, q: RealTimeQuery, z: complex) -> complex:
    """sum_j R_j / (a_j - z)."""
    poles, log_abs, signs = _residues(a, q.tau1, q.x1)
    return complex(np.sum(signs * np.exp(log_abs) / (poles - z)))


def poisson_w_residue_sum_by_quadrature(
    a: ParticleConfig,
    q: RealTimeQuery,
    z: complex,
    radius: float = 0.25,
    settings: Optional[QuadratureSettings] = None,
) -> complex:
    """The same sum from circle quadrature of tau1^{x1-w} / (Gamma(x1-w+1) prod (w - a_r) (w - z))."""
    positions = a.array.astype(float)

    def integrand(w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        return (
            q.tau1 ** (q.x1 - w) * rgamma(q.x1 - w + 1)
            / np.prod(w[..., None] - positions, axis=-1) / (w - z)
        )

    return sum(
        (circle_quadrature(integrand, complex(m), radius, settings) for m in poisson_w_poles(a, q.x1)),
        0j,
    )


def _line_integrand(a: ParticleConfig, q: RealTimeQuery) -> Callable[[np.ndarray], np.ndarray]:
    poles, log_abs, signs = _residues(a, q.tau1, q.x1)
    positions = a.array.astype(float)
    log_tau2 = math.log(q.tau2)

    def integrand(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        log_z_part = (
            log_gamma(q.x2 - z) + (z - q.x2) * log_tau2
            + np.sum(np.log(z[..., None] - positions), axis=-1)
        )
        exponent = log_z_part[..., None] + log_abs
        if np.max(exponent.real) > MAX_EXPONENT:
            raise QuadratureError("Poisson kernel terms overflow double precision on the z-line.")
        return np.sum(signs * np.exp(exponent) / (poles - z[..., None]), axis=-1)

    return integrand


def k_poisson(a: ParticleConfig, q: RealTimeQuery, settings: Optional[QuadratureSettings] = None) -> float:
    """
    Correlation kernel of the noncolliding Poisson walks started from a.

    Gamma(x2 - z) decays like e^{-pi |Im z| / 2} on the line Re z = x2 - 1/2, against the polynomial
    growth of prod (z - a_r).

    Args:
        a: Initial configuration.
        q: Real times and integer positions.
        settings: Quadrature settings.

    Returns:
        K^Poisson(tau1, x1; tau2, x2).
    """
    indicator = poisson_indicator(q)
    if not poisson_w_poles(a, q.x1):
        return -indicator
    settings = quadrature_settings(settings)
    result = integrate_vertical_line(
        _line_integrand(a, q), q.x2 - 0.5, decay_rate=math.pi / 2, settings=settings, degree=a.n
    )
    double_integral = complex(result.value) / (2j * math.pi)
    return -indicator - double_integral.real


def vandermonde_value(positions: tuple[int, ...]) -> int:
    """V(x) = prod_{i<j} (x_j - x_i)."""
    return math.prod(positions[j] - positions[i] for j in range(len(positions)) for i in range(j))


def poisson_rates(config: ParticleConfig) -> dict[ParticleConfig, Fraction]:
    """
    Jump rates of the continuous-time walk out of `config`.

    Particle i jumps to the right at rate V(x + e_i) / V(x); the rates of all moves sum to N.

    Args:
        config: Current configuration.

    Returns:
        Rate of every reachable configuration (blocked jumps omitted).
    """
    v = vandermonde_value(config.positions)
    rates = {}
    for i in range(config.n):
        moved = list(config.positions)
        moved[i] += 1
        if i + 1 < config.n and moved[i] == moved[i + 1]:
            continue
        rates[ParticleConfig(positions=tuple(moved))] = Fraction(vandermonde_value(tuple(moved)), v)
    return rates

"""
Extended discrete sine kernel

    K_u(t, x; s, y) = -(1 / 2 pi i) int_{conj(u)}^{u} (1 - z)^{t-s} z^{-(x-y)-1} dz

where the path crosses the real axis inside (0, 1) when t > s and inside (-inf, 0) when t <= s.
Both exponents are integers, so the integrand is a rational function and only the side on which
the path passes its poles 0 and 1 matters.
"""

import cmath
import math
from collections.abc import Sequence
from typing import Callable, Optional, TypeVar

import numpy as np
import sympy
from scipy import integrate

from noncolliding.exceptions import DomainError, DuplicatePointError, PathDegeneracyError, QuadratureError
from noncolliding.modeling import ComplexSlope, SineQuery, SpaceTimePoint

Q = TypeVar("Q")

MIN_IMAG_PART = 1e-12
PATH_ABS_TOL = 1e-14
PATH_REL_TOL = 1e-13


def crossing_point(q: SineQuery) -> float:
    """Real point where the integration path crosses the axis."""
    return 0.5 if q.t > q.s else -1.0


def _segment_integral(k: int, n: int, start: complex, end: complex) -> complex:
    direction = end - start

    def integrand(s: float) -> np.ndarray:
        z = start + s * direction
        value = (1 - z) ** k * z ** (-n - 1) * direction
        return np.array([value.real, value.imag])

    result, error = integrate.quad_vec(integrand, 0.0, 1.0, epsabs=PATH_ABS_TOL, epsrel=PATH_REL_TOL, limit=2000)
    if not np.all(np.isfinite(result)) or error > 1e-9 * max(1.0, float(np.abs(result).max())):
        raise QuadratureError(f"Path integral from {start} to {end} did not converge (error {error:.3e}).")
    return complex(result[0], result[1])


def extended_sine(u: ComplexSlope, q: SineQuery) -> complex:
    """
    Extended discrete sine kernel evaluated by quadrature along the polyline conj(u) -> c -> u.

    Args:
        u: Complex slope.
        q: Arguments (t, x; s, y).

    Returns:
        K_u(t, x; s, y).
    """
    if abs(u.u.imag) < MIN_IMAG_PART:
        raise PathDegeneracyError("The slope is too close to the real axis for the path to cross it.")
    k, n = q.t - q.s, q.x - q.y
    c = complex(crossing_point(q), 0.0)
    integral = _segment_integral(k, n, u.u.conjugate(), c) + _segment_integral(k, n, c, u.u)
    return -integral / (2j * math.pi)


def extended_sine_closed_form(u: ComplexSlope, q: SineQuery) -> complex:
    """The same kernel from the exact partial fraction expansion of the integrand."""
    k, n = q.t - q.s, q.x - q.y
    crossing = crossing_point(q)
    z = sympy.Symbol("z")
    total = 0j
    for term in sympy.Add.make_args(sympy.apart((1 - z) ** k * z ** (-n - 1), z)):
        numerator, denominator = sympy.fraction(sympy.together(term))
        if sympy.degree(denominator, z) == 1 and sympy.degree(numerator, z) <= 0:
            pole = complex(sympy.solve(denominator, z)[0])
            coefficient = complex(numerator / sympy.LC(denominator, z))
            turn = 2 * cmath.phase(u.u - pole)
            if crossing < pole.real:
                turn -= 2 * math.pi
            total += coefficient * 1j * turn
        else:
            antiderivative = sympy.lambdify(z, sympy.integrate(term, z), "numpy")
            total += complex(antiderivative(u.u)) - complex(antiderivative(u.u.conjugate()))
    return -total / (2j * math.pi)


def discrete_sine(phi: float, x: int, y: int) -> float:
    """
    Discrete sine kernel sin(phi (x - y)) / (pi (x - y)), equal to phi / pi on the diagonal.

    Args:
        phi: Angle in (0, pi); the density is phi / pi.
        x: First site.
        y: Second site.

    Returns:
        The kernel value.
    """
    if not 0 < phi < math.pi:
        raise DomainError(f"phi must lie in (0, pi), got {phi}.")
    if x == y:
        return phi / math.pi
    return math.sin(phi * (x - y)) / (math.pi * (x - y))


def equal_time_gauge(u: ComplexSlope, n: int) -> complex:
    """Factor (-1)^n |u|^n mapping K_u(t, x; t, x - n) onto the discrete sine kernel."""
    return (-1) ** n * u.modulus**n


def complement_kernel(kernel: Callable[[Q], complex]) -> Callable[[Q], complex]:
    """
    Kernel of the complementary configuration, 1_{x=y} 1_{t=s} - K.

    Args:
        kernel: Any kernel whose queries expose `coincident`.

    Returns:
        The transformed kernel.
    """
    def complement(query: Q) -> complex:
        return float(getattr(query, "coincident")) - kernel(query)

    return complement


def sine_correlation(u: ComplexSlope, points: Sequence[SpaceTimePoint], kernel: Optional[Callable] = None) -> float:
    """Determinant of the extended sine kernel on distinct space-time points."""
    kernel = kernel or extended_sine
    if len(set(points)) != len(points):
        raise DuplicatePointError("Correlation probabilities need pairwise distinct points.")
    if not points:
        return 1.0
    matrix = np.array([
        [kernel(u, SineQuery(t=p.t, x=p.x, s=r.t, y=r.x)) for r in points]
        for p in points
    ], dtype=complex)
    return float(np.linalg.det(matrix).real)

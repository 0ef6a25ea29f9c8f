"""
Drift of the initial data: the principal value of the integral of 1/v against the initial density,
which shifts the effective jump probability seen by the local statistics.
"""

import math

import numpy as np
from scipy import integrate

from noncolliding.exceptions import DomainError, MultipleZeroError, NormalizationError, QuadratureError
from noncolliding.initial_data.profiles import GRID_POINTS, ProfileFunction
from noncolliding.modeling import DensityProfile, ParticleConfig

NORMALIZATION_TOLERANCE = 1e-10
QUAD_TOLERANCE = 1e-12


def drift_from_profile(p: ProfileFunction) -> float:
    """
    p.v. int_{-1/2}^{1/2} dx / f(x).

    Written as the Cauchy principal value of g(x) / (x - chi) with the smooth g(x) = (x - chi) / f(x),
    and integrated by QUADPACK's Cauchy-weight rule.

    Args:
        p: Profile with a single simple zero chi.

    Returns:
        The drift d.
    """
    values = np.array([p.f(float(x)) for x in np.linspace(-0.5, 0.5, GRID_POINTS)])
    changes = int(np.count_nonzero(np.diff(np.sign(values)) != 0))
    if changes != 1:
        raise MultipleZeroError(f"The profile changes sign {changes} times on [-1/2, 1/2].")
    chi = p.chi
    limit = 1 / p.df(chi)

    def regular(x: float) -> float:
        if abs(x - chi) < 1e-12:
            return limit
        return (x - chi) / p.f(x)

    value, error = integrate.quad(
        regular, -0.5, 0.5, weight="cauchy", wvar=chi, epsabs=QUAD_TOLERANCE, epsrel=QUAD_TOLERANCE, limit=200
    )
    if error > 1e-8:
        raise QuadratureError(f"Principal value integral did not converge (error {error:.2e}).")
    return float(value)


def drift_finite(a: ParticleConfig, T: int, R: float) -> float:  # noqa: N803
    """
    d_N(R) = sum of 1 / a_i over |a_i| >= R T, with compensated summation.

    Args:
        a: Initial configuration.
        T: Observation time.
        R: Cutoff in units of T.

    Returns:
        The finite drift.
    """
    if T < 1 or R <= 0:
        raise DomainError("drift_finite needs T >= 1 and R > 0.")
    cutoff = R * T
    return math.fsum(1 / x for x in a.positions if abs(x) >= cutoff)


def _log_abs(v: float) -> float:
    # log|v| with the log epsilon of the symmetric excision around 0 removed
    return 0.0 if v == 0 else math.log(abs(v))


def drift_from_global(density: DensityProfile) -> float:
    """
    p.v. int mu(dv) / v for a piecewise-constant probability density.

    Each piece contributes rho (log|hi| - log|lo|); at a breakpoint v = 0 the excised logarithms
    cancel when the density is the same on both sides.

    Args:
        density: Probability density with zero tails and 0 inside its support.

    Returns:
        The drift d.
    """
    if density.left_tail_rho > 0 or density.right_tail_rho > 0:
        raise NormalizationError("A global density must have zero tails.")
    mass = density.total_mass
    if abs(mass - 1) > NORMALIZATION_TOLERANCE:
        raise NormalizationError(f"Total mass {mass} differs from 1.")
    if not density.density_at(0.0) > 0:
        raise DomainError("v = 0 must lie inside the support.")
    left = density.density_at(-1e-300) if any(hi == 0 for _, hi, _ in density.pieces) else None
    if left is not None and not math.isclose(left, density.density_at(0.0), rel_tol=1e-9):
        raise DomainError("The principal value diverges: the density jumps at v = 0.")
    return math.fsum(rho * (_log_abs(hi) - _log_abs(lo)) for lo, hi, rho in density.pieces)


def profile_density(p: ProfileFunction) -> DensityProfile:
    """Local density q = 1 / f'(chi) around the origin, carrying the profile drift."""
    return DensityProfile.lebesgue(p.q, drift=drift_from_profile(p))

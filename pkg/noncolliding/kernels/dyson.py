"""
Dyson Brownian motion started from the diagonal matrix with eigenvalues alpha.

    K(tau1, xi1; tau2, xi2) = -1_{tau1>tau2} (2 pi dtau)^{-1/2} exp(-dxi^2 / (2 dtau))
        - 1 / ((2 pi i)^2 sqrt(tau1 tau2)) int_{Re z = c} dz oint dw 1 / (w - z)
          exp((z - xi2)^2 / (2 tau2) - (w - xi1)^2 / (2 tau1)) prod_r (z - alpha_r) / (w - alpha_r)

with the z-line to the left of every alpha_r and the w-contour around the alpha_r only.
"""

import math
from collections.abc import Sequence
from typing import Callable, Optional

import numpy as np

from noncolliding._noncolliding import quadrature_settings
from noncolliding.core.quadrature import circle_quadrature, integrate_vertical_line
from noncolliding.exceptions import DomainError
from noncolliding.modeling import DysonQuery, QuadratureSettings

MAX_CIRCLE_RADIUS = 0.25


def dbm_indicator(q: DysonQuery) -> float:
    """Brownian transition density from (tau2, xi2) to (tau1, xi1) when tau1 > tau2, else 0."""
    if q.tau1 <= q.tau2:
        return 0.0
    dtau = q.tau1 - q.tau2
    return math.exp(-((q.xi1 - q.xi2) ** 2) / (2 * dtau)) / math.sqrt(2 * math.pi * dtau)


def _check_alpha(alpha: Sequence[float]) -> np.ndarray:
    values = np.asarray(alpha, dtype=float)
    if values.size == 0:
        raise DomainError("alpha needs at least one eigenvalue.")
    if np.any(np.diff(values) < 0):
        raise DomainError("alpha must be nondecreasing.")
    return values


def _w_part(values: np.ndarray, xi1: float, tau1: float) -> Callable[[np.ndarray], np.ndarray]:
    def g(w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        return np.exp(-((w - xi1) ** 2) / (2 * tau1)) / np.prod(w[..., None] - values, axis=-1)

    return g


def dbm_w_sum(
    alpha: Sequence[float],
    q: DysonQuery,
    z: np.ndarray,
    radius: Optional[float] = None,
    settings: Optional[QuadratureSettings] = None,
) -> np.ndarray:
    """
    (1 / 2 pi i) oint g(w) / (w - z) dw around the alpha_r, at every z outside the contour.

    Distinct eigenvalues give the residue sum sum_j R_j / (alpha_j - z); repeated ones are handled
    by circle quadrature around each distinct value.

    Args:
        alpha: Nondecreasing eigenvalues.
        q: Query supplying xi1 and tau1.
        z: Points outside the w-contour.
        radius: Radius of the circles used when alpha has repeats.
        settings: Quadrature settings.

    Returns:
        The w-integral at each z.
    """
    values = _check_alpha(alpha)
    z = np.asarray(z, dtype=complex)
    distinct = np.unique(values)
    if distinct.size == values.size:
        residues = np.array([
            math.exp(-((v - q.xi1) ** 2) / (2 * q.tau1)) / np.prod(v - np.delete(values, j))
            for j, v in enumerate(values)
        ])
        return np.sum(residues / (values - z[..., None]), axis=-1)

    if radius is None:
        gaps = np.diff(distinct)
        radius = min(MAX_CIRCLE_RADIUS, 0.4 * float(gaps.min())) if gaps.size else MAX_CIRCLE_RADIUS
    g = _w_part(values, q.xi1, q.tau1)
    flat = z.ravel()
    out = np.empty(flat.shape, dtype=complex)
    for k, point in enumerate(flat):
        out[k] = sum(
            (circle_quadrature(lambda w, p=point: g(w) / (w - p), complex(v), radius, settings) for v in distinct),
            0j,
        )
    return out.reshape(z.shape)


def k_dbm(
    alpha: Sequence[float],
    q: DysonQuery,
    c: Optional[float] = None,
    settings: Optional[QuadratureSettings] = None,
) -> float:
    """
    Correlation kernel of Dyson Brownian motion started from the eigenvalues alpha.

    Along the z-line the integrand carries the Gaussian factor e^{-y^2 / (2 tau2)}, so the panels are
    narrowed to the width sqrt(tau2) / 2 when tau2 is small.

    Args:
        alpha: Nondecreasing initial eigenvalues.
        q: Times and positions.
        c: Abscissa of the z-line, left of alpha_1 (default alpha_1 - 1).
        settings: Quadrature settings.

    Returns:
        K^DBM(tau1, xi1; tau2, xi2).
    """
    values = _check_alpha(alpha)
    c = float(values[0]) - 1.0 if c is None else c
    if c >= values[0]:
        raise DomainError(f"The z-line Re z = {c} must lie to the left of alpha_1 = {values[0]}.")
    settings = quadrature_settings(settings)
    width = min(settings.panel_width, math.sqrt(q.tau2) / 2)
    if width < settings.panel_width:
        settings = settings.model_copy(update={"panel_width": width})

    radius = None
    if np.unique(values).size < values.size:
        gaps = np.diff(np.unique(values))
        radius = min(MAX_CIRCLE_RADIUS, 0.4 * float(gaps.min()) if gaps.size else MAX_CIRCLE_RADIUS, 0.5 * (values[0] - c))

    def integrand(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        z_part = np.exp((z - q.xi2) ** 2 / (2 * q.tau2)) * np.prod(z[..., None] - values, axis=-1)
        return z_part * dbm_w_sum(values, q, z, radius, settings)

    result = integrate_vertical_line(integrand, c, decay_rate=1.0 / math.sqrt(q.tau2), settings=settings, degree=values.size)
    double_integral = complex(result.value) / (2j * math.pi)
    return -dbm_indicator(q) - double_integral.real / math.sqrt(q.tau1 * q.tau2)

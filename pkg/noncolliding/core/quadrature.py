from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from noncolliding._noncolliding import quadrature_settings
from noncolliding.core.special import gauss_legendre
from noncolliding.exceptions import QuadratureError
from noncolliding.log import logger
from noncolliding.modeling import QuadratureSettings

ComplexFunction = Callable[[np.ndarray], np.ndarray]

PANELS_PER_BATCH = 16
MAX_CIRCLE_NODES = 1 << 22


@dataclass(frozen=True)
class LineQuadrature:
    """
    Result of a vertical line integral.

    Attributes:
        value: Integral of f(z) dz along the upward line (one entry per component of f).
        abs_integral: Integral of |f(c + iy)| dy, per component.
        y_max: Truncation height reached on the longer side.
        evaluations: Number of integrand evaluations.
    """
    value: Union[complex, np.ndarray]
    abs_integral: Union[float, np.ndarray]
    y_max: float
    evaluations: int


def _tail_is_negligible(
    panel_max: float,
    distance: float,
    decay_rate: float,
    degree: float,
    min_extent: float,
    tol: float,
) -> bool:
    if distance < min_extent or decay_rate * (1 + distance) < 2 * degree:
        return False
    return 2 * panel_max / decay_rate < tol / 10


def integrate_vertical_line(
    f: ComplexFunction,
    c: float,
    decay_rate: float,
    settings: Optional[QuadratureSettings] = None,
    degree: float = 0.0,
    min_extent: float = 0.0,
) -> LineQuadrature:
    """
    Integrate f(z) dz along the vertical line Re z = c, oriented upward.

    Panels of fixed width carrying Gauss-Legendre nodes are added on both sides of the real axis
    until the envelope tail, estimated from the last panel, falls below abs_tol / 10.

    Args:
        f: Vectorized integrand; may return a trailing axis of components.
        c: Abscissa of the line.
        decay_rate: Exponential decay rate of the envelope in |Im z|.
        settings: Quadrature settings.
        degree: Degree of the polynomial factor of the envelope.
        min_extent: Height below which the tail test is never applied.

    Returns:
        The integral with the absolute integral of the integrand.
    """
    settings = quadrature_settings(settings)
    nodes, weights = gauss_legendre(settings.panel_order)
    half = settings.panel_width / 2
    offsets = half * (1 + nodes)

    total: Union[complex, np.ndarray] = 0j
    abs_total: Union[float, np.ndarray] = 0.0
    y_max = 0.0
    evaluations = 0
    panels = 0

    for side in (1.0, -1.0):
        first = 0
        finished = False
        while not finished:
            if panels >= settings.max_panels:
                raise QuadratureError(
                    f"Line integral at Re z = {c:g} did not meet its tail bound within {settings.max_panels} panels."
                )
            starts = side * settings.panel_width * np.arange(first, first + PANELS_PER_BATCH)
            y = starts[:, None] + side * offsets[None, :]
            values = np.asarray(f(c + 1j * y), dtype=complex)
            evaluations += y.size
            magnitudes = np.abs(values)
            if not np.all(np.isfinite(magnitudes)):
                raise QuadratureError(f"Non-finite integrand on the line Re z = {c:g}.")
            axis_weights = weights[:, None] if values.ndim == 3 else weights
            panel_sums = half * np.sum(values * axis_weights, axis=1)
            panel_abs = half * np.sum(magnitudes * axis_weights, axis=1)
            panel_max = magnitudes.max(axis=tuple(range(1, values.ndim)))

            for j in range(PANELS_PER_BATCH):
                total = total + 1j * panel_sums[j]
                abs_total = abs_total + panel_abs[j]
                panels += 1
                distance = (first + j + 1) * settings.panel_width
                if _tail_is_negligible(
                    panel_max[j], distance, decay_rate, degree, min_extent, settings.abs_tol
                ):
                    finished = True
                    y_max = max(y_max, distance)
                    break
            first += PANELS_PER_BATCH

    logger.debug(f"Line integral at Re z = {c:g}: {panels} panels, truncated at |y| = {y_max:g}.")
    if np.ndim(total) == 0:
        return LineQuadrature(complex(total), float(abs_total), y_max, evaluations)
    return LineQuadrature(np.asarray(total), np.asarray(abs_total), y_max, evaluations)


def vertical_line_integral(
    f: ComplexFunction,
    c: float,
    decay_rate: float,
    settings: Optional[QuadratureSettings] = None,
    degree: float = 0.0,
) -> complex:
    """
    Integral of f(z) dz over the upward vertical line Re z = c, i.e. the integral of f(c + iy) i dy.

    Args:
        f: Vectorized integrand.
        c: Abscissa of the line.
        decay_rate: Exponential decay rate of |f| in |Im z|.
        settings: Quadrature settings.
        degree: Degree hint of the polynomial factor of the envelope.

    Returns:
        The line integral.
    """
    return complex(integrate_vertical_line(f, c, decay_rate, settings, degree).value)


def circle_quadrature(
    f: ComplexFunction,
    center: complex,
    radius: float,
    settings: Optional[QuadratureSettings] = None,
) -> complex:
    """
    (1 / 2 pi i) times the integral of f over the positively oriented circle.

    Trapezoidal rule in the angle with the node count doubled until two successive values agree.

    Args:
        f: Vectorized integrand, analytic on the circle.
        center: Center of the circle.
        radius: Radius of the circle.
        settings: Quadrature settings.

    Returns:
        The normalized contour integral.
    """
    settings = quadrature_settings(settings)
    n = 16
    previous: Optional[complex] = None
    while n <= MAX_CIRCLE_NODES:
        theta = 2 * np.pi * np.arange(n) / n
        offset = radius * np.exp(1j * theta)
        value = complex(np.mean(np.asarray(f(center + offset), dtype=complex) * offset))
        if previous is not None and abs(value - previous) <= settings.abs_tol:
            return value
        previous = value
        n *= 2
    raise QuadratureError(f"Circle quadrature around {center} did not converge.")

"""
Finite-N correlation kernel of the noncolliding Bernoulli random walk.

    K(t1, x1; t2, x2) = 1_{x1>=x2} 1_{t1>t2} (-1)^{x1-x2+1} C(t1-t2, x1-x2)
                        + (1 / 2 pi i) int_{Re z = c} F(z) sum_m r_m / (m - z) dz

The w-integral is the finite sum of the residues r_m of

    g(w) = t1! sin(pi w) rho^w / ((w - x1)_{t1+1} prod_r (w - a_r)),    rho = (1 - beta) / beta,

at m in {x1 - t1, ..., x1} ∩ a, and F(z) = -(-1)^{x2} Gamma(z - x2 + t2) Gamma(x2 - z) rho^{-z}
prod_r (z - a_r) / (pi (t2 - 1)!) is entire in the strip x2 - t2 < Re z < x2, so the z-line may sit
anywhere inside it. All factors are combined in log space before exponentiation.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Literal, Optional

import mpmath
import numpy as np
from scipy import optimize
from scipy.special import logsumexp

from noncolliding._noncolliding import NonColliding, SearchBox, quadrature_settings
from noncolliding.action.critical_point import find_critical_point
from noncolliding.core.correlation import correlation_probability
from noncolliding.core.quadrature import circle_quadrature, integrate_vertical_line
from noncolliding.core.special import gauss_legendre, log_gamma, log_sin_pi
from noncolliding.exceptions import (
    ImaginaryLeakError,
    InvalidTimeError,
    NonCollidingError,
    NumericalFailure,
    QuadratureError,
)
from noncolliding.kernels.sine import extended_sine
from noncolliding.log import logger
from noncolliding.modeling import (
    BernoulliKernelResult,
    ComplexSlope,
    KernelQuery,
    QuadratureSettings,
    SineQuery,
    SpaceTimePoint,
    WalkModel,
)
from noncolliding.status_messages import (
    ContourEscalatedWarning,
    IllConditionedKernelWarning,
    PrecisionEscalatedWarning,
)

Contour = Literal["auto", "line", "saddle"]

LOG_PI = math.log(math.pi)
MAX_EXPONENT = 700.0
LEAK_TOLERANCE = 1e-8
ROUNDING_FACTOR = 64 * float(np.finfo(float).eps)
CHUNK_ENTRIES = 1 << 21
SADDLE_SIZE_THRESHOLD = 200
SADDLE_PANEL_WIDTH = 1.0
ELLIPSE_PANEL_LENGTH = 1.0
EXTENDED_GUARD_DIGITS = 20
SADDLE_GUESS = complex(-0.5, 0.5)


@dataclass(frozen=True)
class _Residues:
    poles: np.ndarray
    log_abs: np.ndarray
    signs: np.ndarray


@dataclass(frozen=True)
class _Attempt:
    value: complex
    magnitude: float
    abscissa: float
    method: Literal["line", "saddle", "extended"]
    y_max: float
    error_estimate: float


def _check_times(q: KernelQuery) -> None:
    if q.t1 < 1 or q.t2 < 1:
        raise InvalidTimeError(f"The finite kernel needs t1, t2 >= 1, got t1={q.t1}, t2={q.t2}.")


def indicator_term(q: KernelQuery) -> int:
    """1_{x1>=x2} 1_{t1>t2} (-1)^{x1-x2+1} C(t1-t2, x1-x2), the summand without integrals."""
    if q.x1 < q.x2 or q.t1 <= q.t2 or q.x1 - q.x2 > q.t1 - q.t2:
        return 0
    return (-1) ** (q.x1 - q.x2 + 1) * math.comb(q.t1 - q.t2, q.x1 - q.x2)


def w_poles(model: WalkModel, t1: int, x1: int) -> list[int]:
    """Integer poles {x1 - t1, ..., x1} ∩ a of the w-integrand."""
    return [m for m in model.a.positions if x1 - t1 <= m <= x1]


@lru_cache(maxsize=8192)
def _residues(model: WalkModel, t1: int, x1: int) -> _Residues:
    poles = w_poles(model, t1, x1)
    a = model.positions
    log_abs = np.empty(len(poles))
    signs = np.empty(len(poles))
    for k, m in enumerate(poles):
        others = a[a != m] - m
        log_abs[k] = (
            math.lgamma(t1 + 1) + LOG_PI + m * model.log_odds
            - math.lgamma(x1 - m + 1) - math.lgamma(t1 - x1 + m + 1)
            - float(np.sum(np.log(np.abs(others))))
        )
        signs[k] = (-1) ** (x1 + int(np.count_nonzero(others > 0)))
    return _Residues(np.asarray(poles, dtype=float), log_abs, signs)


def w_residue_sum(model: WalkModel, q: KernelQuery, z: complex) -> complex:
    """sum_m r_m / (m - z): the closed w-integral (1 / 2 pi i) of g(w) / (w - z) as a residue sum."""
    res = _residues(model, q.t1, q.x1)
    return complex(np.sum(res.signs * np.exp(res.log_abs) / (res.poles - z)))


def w_integrand(model: WalkModel, q: KernelQuery, z: complex) -> Callable[[np.ndarray], np.ndarray]:
    """The w-integrand g(w) / (w - z), for contour quadrature around the poles."""
    def integrand(w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        return np.exp(_log_g(model, q.t1, q.x1, w)) / (w - z)

    return integrand


def w_residue_sum_by_quadrature(
    model: WalkModel,
    q: KernelQuery,
    z: complex,
    radius: float = 0.25,
    settings: Optional[QuadratureSettings] = None,
) -> complex:
    """The same residue sum from circle quadrature around every pole."""
    integrand = w_integrand(model, q, z)
    return sum(
        (circle_quadrature(integrand, complex(m), radius, settings) for m in w_poles(model, q.t1, q.x1)),
        0j,
    )


def _sum_log(z: np.ndarray, points: np.ndarray) -> np.ndarray:
    flat = z.ravel()
    out = np.zeros(flat.shape, dtype=complex)
    chunk = max(1, CHUNK_ENTRIES // max(points.size, 1))
    for start in range(0, flat.size, chunk):
        out[start:start + chunk] = np.sum(np.log(flat[start:start + chunk, None] - points[None, :]), axis=1)
    return out.reshape(z.shape)


def _log_f(model: WalkModel, t2: int, x2: int, z: np.ndarray) -> np.ndarray:
    """A logarithm of |F(z)| e^{i arg}, without the sign -(-1)^{x2}."""
    z = np.asarray(z, dtype=complex)
    return (
        log_gamma(z - x2 + t2) + log_gamma(x2 - z) - z * model.log_odds
        + _sum_log(z, model.positions) - LOG_PI - math.lgamma(t2)
    )


def _log_g(model: WalkModel, t1: int, x1: int, w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    return (
        math.lgamma(t1 + 1) + log_sin_pi(w) + w * model.log_odds
        - log_gamma(w - x1 + t1 + 1) + log_gamma(w - x1)
        - _sum_log(w, model.positions)
    )


def _f_sign(x2: int) -> float:
    return -float((-1) ** x2)


def _line_integrand(model: WalkModel, q: KernelQuery, res: _Residues) -> Callable[[np.ndarray], np.ndarray]:
    sign = _f_sign(q.x2)

    def integrand(z: np.ndarray) -> np.ndarray:
        exponent = _log_f(model, q.t2, q.x2, z)[..., None] + res.log_abs
        if np.max(exponent.real) > MAX_EXPONENT:
            raise QuadratureError("Residue terms overflow double precision on the z-line.")
        terms = sign * res.signs * np.exp(exponent) / (res.poles - z[..., None])
        return np.stack([terms.sum(axis=-1), np.abs(terms).sum(axis=-1)], axis=-1)

    return integrand


def _line_attempt(model: WalkModel, q: KernelQuery, c: float, settings: QuadratureSettings) -> _Attempt:
    res = _residues(model, q.t1, q.x1)
    result = integrate_vertical_line(
        _line_integrand(model, q, res), c, decay_rate=math.pi, settings=settings, degree=model.N + q.t2
    )
    value = complex(result.value[0]) / (2j * math.pi)
    magnitude = abs(complex(result.value[1])) / (2 * math.pi)
    return _Attempt(
        value=value,
        magnitude=magnitude,
        abscissa=c,
        method="line",
        y_max=result.y_max,
        error_estimate=ROUNDING_FACTOR * magnitude + settings.abs_tol,
    )


def optimal_abscissa(model: WalkModel, q: KernelQuery) -> float:
    """Point of the strip minimizing the size of the residue terms half a unit above the real axis."""
    res = _residues(model, q.t1, q.x1)
    lo, hi = q.x2 - q.t2 + 0.5, q.x2 - 0.5
    if hi <= lo:
        return lo

    def envelope(c: float) -> float:
        z = complex(c, 0.5)
        log_f = float(_log_f(model, q.t2, q.x2, np.array([z]))[0].real)
        return log_f + float(logsumexp(res.log_abs - np.log(np.abs(res.poles - z))))

    grid = np.linspace(lo, hi, int(round(2 * (hi - lo))) + 1)
    values = [envelope(c) for c in grid]
    best = float(grid[int(np.argmin(values))])
    refined = optimize.minimize_scalar(envelope, bounds=(max(lo, best - 0.5), min(hi, best + 0.5)), method="bounded")
    if refined.success and refined.fun < min(values):
        return float(refined.x)
    return best


def _best_line_attempt(model: WalkModel, q: KernelQuery, settings: QuadratureSettings) -> _Attempt:
    return _line_attempt(model, q, optimal_abscissa(model, q), settings)


def saddle_point(model: WalkModel, t: int, x: int) -> Optional[complex]:
    """Critical point x + t z_c of the action seen from (t, x), in lattice coordinates."""
    return _saddle_point(model, t, x, NonColliding.config.search_box)


@lru_cache(maxsize=8192)
def _saddle_point(model: WalkModel, t: int, x: int, box: SearchBox) -> Optional[complex]:
    try:
        cp = find_critical_point(model.recentered(x, t), guess=SADDLE_GUESS, box=box, certify=False)
    except NonCollidingError as error:
        logger.debug(f"No saddle point for (t={t}, x={x}): {error}")
        return None
    return x + t * cp.z_c


def _ellipse_nodes(center: float, height: float, left: float, right: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights (dw / 2 pi i) of the closed contour made of two half-ellipses.

    The upper half runs from `right` through center + i height to `left`, the lower half is its
    mirror image; the contour is smooth at the top and crosses Re w = center only there.
    """
    nodes, weights = gauss_legendre(16)
    points, factors = [], []
    arcs = (
        (0.0, math.pi / 2, right - center),
        (math.pi / 2, math.pi, center - left),
        (math.pi, 3 * math.pi / 2, center - left),
        (3 * math.pi / 2, 2 * math.pi, right - center),
    )
    for theta_lo, theta_hi, axis in arcs:
        length = math.pi / 2 * math.sqrt((axis**2 + height**2) / 2)
        edges = np.linspace(theta_lo, theta_hi, max(4, math.ceil(length / ELLIPSE_PANEL_LENGTH)) + 1)
        half = np.diff(edges)[:, None] / 2
        theta = (edges[:-1, None] + half * (1 + nodes[None, :])).ravel()
        points.append(center + axis * np.cos(theta) + 1j * height * np.sin(theta))
        factors.append((half * weights[None, :]).ravel() * (-axis * np.sin(theta) + 1j * height * np.cos(theta)))
    return np.concatenate(points), np.concatenate(factors) / (2j * math.pi)


def _saddle_attempt(model: WalkModel, q: KernelQuery, settings: QuadratureSettings) -> _Attempt:
    w_saddle = saddle_point(model, q.t1, q.x1)
    z_saddle = saddle_point(model, q.t2, q.x2)
    if w_saddle is None or z_saddle is None:
        raise QuadratureError("The steepest descent contour needs the critical points of both arguments.")
    left, right = q.x1 - q.t1 - 0.5, q.x1 + 0.5
    if not left < w_saddle.real < right or not q.x2 - q.t2 + 0.25 < z_saddle.real < q.x2 - 0.25:
        raise QuadratureError("The critical points lie outside the admissible contour region.")

    w, cw = _ellipse_nodes(w_saddle.real, w_saddle.imag, left, right)
    scale = float(_log_f(model, q.t2, q.x2, np.array([z_saddle]))[0].real)
    log_g = _log_g(model, q.t1, q.x1, w) + scale
    if np.max(log_g.real) > MAX_EXPONENT:
        raise QuadratureError("The w-contour integrand overflows after scaling by the saddle value.")
    gw = cw * np.exp(log_g)
    abs_gw = np.abs(gw)
    near_height = 2 * w_saddle.imag
    sign = _f_sign(q.x2)

    def integrand(z: np.ndarray) -> np.ndarray:
        flat = z.ravel()
        log_f = _log_f(model, q.t2, q.x2, flat)
        if np.max(log_f.real - scale) > MAX_EXPONENT:
            raise QuadratureError("The z-line integrand overflows after scaling by the saddle value.")
        f = sign * np.exp(log_f - scale)
        cauchy = 1 / (w[None, :] - flat[:, None])
        phi = f * (cauchy @ gw)
        magnitude = np.abs(f) * (np.abs(cauchy) @ abs_gw)
        near = np.abs(flat.imag) <= near_height
        if np.any(near):
            # (g(w) - g(z)) / (w - z) is regular where the z-line meets the w-contour
            diagonal = sign * np.exp(log_f[near] + _log_g(model, q.t1, q.x1, flat[near]))
            terms = (f[near, None] * gw[None, :] - diagonal[:, None] * cw[None, :]) * cauchy[near]
            phi[near] = terms.sum(axis=1)
            magnitude[near] = np.abs(terms).sum(axis=1)
        return np.stack([phi, magnitude], axis=-1).reshape(*z.shape, 2)

    line_settings = settings.model_copy(update={"panel_width": SADDLE_PANEL_WIDTH})
    result = integrate_vertical_line(
        integrand, z_saddle.real, decay_rate=math.pi, settings=line_settings, min_extent=2 * near_height + 4
    )
    value = complex(result.value[0]) / (2j * math.pi)
    magnitude = abs(complex(result.value[1])) / (2 * math.pi)
    return _Attempt(
        value=value,
        magnitude=magnitude,
        abscissa=z_saddle.real,
        method="saddle",
        y_max=result.y_max,
        error_estimate=ROUNDING_FACTOR * magnitude + settings.abs_tol,
    )


def _extended_attempt(model: WalkModel, q: KernelQuery, c: float, y_max: float, condition: float) -> _Attempt:
    """Plain line integral in mpmath with enough digits to absorb the cancellation."""
    digits = int(math.log10(condition)) if math.isfinite(condition) and condition > 1 else model.N + q.t2
    dps = 16 + max(digits, 0) + EXTENDED_GUARD_DIGITS
    beta = model.rational_beta
    poles = w_poles(model, q.t1, q.x1)
    with mpmath.workdps(dps):
        rho = mpmath.mpf(beta.denominator - beta.numerator) / beta.numerator
        residues = []
        for m in poles:
            product = math.prod(m - a for a in model.a.positions if a != m)
            residues.append(
                math.factorial(q.t1) * (-1) ** q.x1 * mpmath.pi * rho**m
                / (math.factorial(q.x1 - m) * math.factorial(q.t1 - q.x1 + m) * product)
            )
        prefactor = -((-1) ** q.x2) / (mpmath.pi * math.factorial(q.t2 - 1))

        def integrand(y: mpmath.mpf) -> mpmath.mpc:
            z = mpmath.mpc(c, y)
            f = (
                prefactor * mpmath.gamma(z - q.x2 + q.t2) * mpmath.gamma(q.x2 - z) * rho ** (-z)
                * mpmath.fprod(z - a for a in model.a.positions)
            )
            return f * mpmath.fsum(r / (m - z) for m, r in zip(poles, residues))

        edges = mpmath.linspace(-y_max, y_max, 2 * max(1, math.ceil(y_max / 2)) + 1)
        value = complex(mpmath.quad(integrand, edges, method="gauss-legendre") / (2 * mpmath.pi))
    return _Attempt(
        value=value,
        magnitude=abs(value) * condition if math.isfinite(condition) else abs(value),
        abscissa=c,
        method="extended",
        y_max=y_max,
        error_estimate=10.0 ** (-dps + digits + 4),
    )


def _plan(
    model: WalkModel,
    q: KernelQuery,
    first_abscissa: float,
    contour: Contour,
    settings: QuadratureSettings,
) -> list[Callable[[], _Attempt]]:
    line = partial(_line_attempt, model, q, first_abscissa, settings)
    best_line = partial(_best_line_attempt, model, q, settings)
    saddle = partial(_saddle_attempt, model, q, settings)
    if contour == "line":
        return [line]
    if contour == "saddle":
        return [saddle]
    if model.N + max(q.t1, q.t2) > SADDLE_SIZE_THRESHOLD:
        return [saddle, best_line]
    return [line, best_line, saddle]


def _evaluate(
    model: WalkModel,
    q: KernelQuery,
    first_abscissa: float,
    contour: Contour,
    settings: Optional[QuadratureSettings],
) -> BernoulliKernelResult:
    _check_times(q)
    indicator = indicator_term(q)
    poles = w_poles(model, q.t1, q.x1)
    if not poles:
        return BernoulliKernelResult(
            value=float(indicator), z_line_abscissa=first_abscissa, w_pole_list=[], method="empty", condition=0.0
        )

    settings = quadrature_settings(settings)
    config = NonColliding.config
    tolerance = config.kernel_error_tolerance
    attempts: list[_Attempt] = []
    failures: list[NonCollidingError] = []
    for step in _plan(model, q, first_abscissa, contour, settings):
        try:
            attempt = step()
        except NumericalFailure as error:
            if contour != "auto":
                raise
            logger.debug(f"Kernel evaluation route failed for {q}: {error}")
            failures.append(error)
            continue
        attempts.append(attempt)
        if attempt.error_estimate <= tolerance:
            break

    converged = bool(attempts) and min(a.error_estimate for a in attempts) <= tolerance
    size = model.N + max(q.t1, q.t2)
    if contour == "auto" and not converged and size <= config.extended_precision_max_size:
        reference = min(attempts, key=lambda a: a.error_estimate) if attempts else None
        condition = reference.magnitude / max(abs(reference.value), settings.abs_tol) if reference else math.inf
        y_max = reference.y_max if reference else 2 * (model.N + q.t2) / math.pi + 20
        attempts.append(_extended_attempt(model, q, first_abscissa, y_max, condition))
    if not attempts:
        raise failures[-1]

    chosen = min(attempts, key=lambda a: a.error_estimate)
    if abs(chosen.value.imag) >= LEAK_TOLERANCE * (1 + abs(indicator + chosen.value.real)):
        raise ImaginaryLeakError(f"Kernel at {q} has imaginary part {chosen.value.imag:.3e}.")

    result = BernoulliKernelResult(
        value=indicator + chosen.value.real,
        im_leak=abs(chosen.value.imag),
        z_line_abscissa=chosen.abscissa,
        w_pole_list=poles,
        method=chosen.method,
        condition=chosen.magnitude / max(abs(chosen.value), settings.abs_tol),
        error_estimate=chosen.error_estimate,
    )
    if contour == "auto":
        if chosen.method == "extended":
            logger.warning_once("Bernoulli kernel re-evaluated in extended precision.")
            result.add_warning(PrecisionEscalatedWarning())
        elif chosen.abscissa != first_abscissa:
            logger.warning_once("Bernoulli kernel z-line moved away from its default abscissa.")
            result.add_warning(ContourEscalatedWarning())
    if chosen.error_estimate > tolerance:
        logger.warning_once(
            f"Bernoulli kernel error estimate {chosen.error_estimate:.1e} exceeds the tolerance {tolerance:.1e}."
        )
        result.add_warning(IllConditionedKernelWarning())
    return result


def k_bernoulli(
    model: WalkModel,
    q: KernelQuery,
    contour: Contour = "auto",
    settings: Optional[QuadratureSettings] = None,
) -> BernoulliKernelResult:
    """
    Correlation kernel of the walk started from `model.a`.

    With `contour="auto"` the z-line starts at Re z = x2 - t2 + 1/2 and the evaluation escalates to
    a better abscissa, then to the steepest descent contour, then to extended precision, as long as
    the error estimate exceeds `NonColliding.config.kernel_error_tolerance`. Large instances start
    with the steepest descent contour.

    Args:
        model: Walk model.
        q: Space-time points with t1, t2 >= 1.
        contour: `auto`, or `line` / `saddle` to force a single route.
        settings: Quadrature settings.

    Returns:
        The kernel value with its diagnostics.
    """
    return _evaluate(model, q, q.x2 - q.t2 + 0.5, contour, settings)


def k_bernoulli_shifted_contour(
    model: WalkModel,
    q: KernelQuery,
    contour: Contour = "auto",
    settings: Optional[QuadratureSettings] = None,
) -> BernoulliKernelResult:
    """The kernel with the z-line at Re z = x2 - 1/2, the other end of the admissible strip."""
    return _evaluate(model, q, q.x2 - 0.5, contour, settings)


def bernoulli_correlation(model: WalkModel, points: Sequence[SpaceTimePoint]) -> float:
    """Probability that the walk visits every point, as a determinant of the kernel."""
    return correlation_probability(lambda q: k_bernoulli(model, q), points)


@dataclass(frozen=True)
class KernelComparison:
    """One entry of the finite versus limit kernel table."""
    t1: int
    t2: int
    x1: int
    x2: int
    k_finite: float
    k_sine: complex

    @property
    def dt(self) -> int:
        return self.t1 - self.t2

    @property
    def dx(self) -> int:
        return self.x1 - self.x2

    @property
    def abs_err(self) -> float:
        return abs(self.k_finite - self.k_sine)


def kernel_grid(
    model: WalkModel,
    slope: ComplexSlope,
    dt_range: Sequence[int],
    dx_range: Sequence[int],
) -> list[KernelComparison]:
    """
    Finite kernel against the extended sine kernel at t_i = T + delta_i, x1 in dx_range, x2 = 0.

    Args:
        model: Walk model observed at time T.
        slope: Slope of the limit kernel.
        dt_range: Time offsets delta_i.
        dx_range: Positions x1.

    Returns:
        One comparison per (delta_1, delta_2, x1).
    """
    rows = []
    for d1 in dt_range:
        for d2 in dt_range:
            for x1 in dx_range:
                q = KernelQuery.at(model.T + d1, x1, model.T + d2, 0)
                finite = k_bernoulli(model, q).value
                limit = extended_sine(slope, SineQuery(t=d1, x=x1, s=d2, y=0))
                rows.append(KernelComparison(t1=q.t1, t2=q.t2, x1=x1, x2=0, k_finite=finite, k_sine=limit))
    return rows


def universality_gap(model: WalkModel, dt_range: Sequence[int], dx_range: Sequence[int]) -> float:
    """
    Largest deviation of the finite kernel from the extended sine kernel at the critical slope.

    Args:
        model: Walk model with a critical point.
        dt_range: Time offsets around T.
        dx_range: Positions x1 (x2 = 0).

    Returns:
        max |K(T + d1, x1; T + d2, 0) - K_u(d1, x1; d2, 0)| with u = z_c / (z_c + 1).
    """
    slope = find_critical_point(model).slope
    return max(row.abs_err for row in kernel_grid(model, slope, dt_range, dx_range))

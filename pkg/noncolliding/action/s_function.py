"""
The action S of the rescaled Bernoulli kernel and its first two derivatives.

With w = T z the derivative reads

    S'(z) = sum_r 1/(w - a_r) + sum_{i=1}^{T-1} 1/(w + i) - pi cot(pi w) - log(1/beta - 1)

where the cotangent realizes the principal value of the lattice sum over all integers. S itself uses
log_H (cut along the negative imaginary axis) for the particle and lattice terms and the holomorphic
continuation of log sin(pi w) to the upper half plane.
"""

import math

import numpy as np

from noncolliding.core.special import log_h, log_sin_pi, pi2_csc2_pi, pi_cot_pi
from noncolliding.exceptions import BranchCutError, PoleError, SingularityError
from noncolliding.modeling import WalkModel

CHUNK_ENTRIES = 1 << 21
INTEGER_TOLERANCE = 1e-12


def _power_sum(w: np.ndarray, poles: np.ndarray, power: int) -> np.ndarray:
    """sum_p (w - p)^(-power) for every entry of w, chunked to bound memory."""
    flat = w.ravel()
    out = np.zeros(flat.shape, dtype=complex)
    if poles.size == 0:
        return out.reshape(w.shape)
    chunk = max(1, CHUNK_ENTRIES // poles.size)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for start in range(0, flat.size, chunk):
            block = flat[start:start + chunk, None] - poles[None, :]
            out[start:start + chunk] = np.sum(block ** (-power), axis=1)
    return out.reshape(w.shape)


def lattice_holes(model: WalkModel) -> np.ndarray:
    """Integers -T+1, ..., -1 where the rising factorial cancels the zeros of the sine."""
    return -np.arange(1, model.T, dtype=float)


def pole_coefficient(model: WalkModel, n: int) -> int:
    """Coefficient of 1/(w - n) in S'; zero means n is a removable point."""
    return int(n in model.a) + int(-model.T < n < 0) - 1


def singular_points(model: WalkModel, lo: int, hi: int) -> list[int]:
    """Integers n in [lo, hi] at which S' has a pole (w-coordinates)."""
    return [n for n in range(lo, hi + 1) if pole_coefficient(model, n) != 0]


def _integer_points(w: np.ndarray) -> np.ndarray:
    return (w.imag == 0) & (np.abs(w.real - np.round(w.real)) < INTEGER_TOLERANCE)


def _removable_values(model: WalkModel, w: np.ndarray, second: bool) -> np.ndarray:
    """S' (or S''/T) at integer points of w, where all singular parts cancel."""
    out = np.empty(w.shape, dtype=complex)
    a = model.positions
    holes = lattice_holes(model)
    for k, value in enumerate(w.real):
        n = int(round(value))
        if pole_coefficient(model, n) != 0:
            raise PoleError(f"S' has a pole at w = {n}.")
        particles = a[a != n]
        lattice = holes[holes != n]
        if second:
            out[k] = -np.sum(1 / (n - particles) ** 2) - np.sum(1 / (n - lattice) ** 2) + math.pi**2 / 3
        else:
            out[k] = np.sum(1 / (n - particles)) + np.sum(1 / (n - lattice)) - model.log_odds
    return out


def s_prime_array(model: WalkModel, z: np.ndarray) -> np.ndarray:
    """Vectorized S'(z)."""
    w = model.T * np.asarray(z, dtype=complex)
    out = np.empty(w.shape, dtype=complex)
    special = _integer_points(w)
    regular = ~special
    wr = w[regular]
    out[regular] = (
        _power_sum(wr, model.positions, 1)
        + _power_sum(wr, lattice_holes(model), 1)
        - pi_cot_pi(wr)
        - model.log_odds
    )
    if np.any(special):
        out[special] = _removable_values(model, w[special], second=False)
    return out


def s_second_array(model: WalkModel, z: np.ndarray) -> np.ndarray:
    """Vectorized S''(z)."""
    w = model.T * np.asarray(z, dtype=complex)
    out = np.empty(w.shape, dtype=complex)
    special = _integer_points(w)
    regular = ~special
    wr = w[regular]
    out[regular] = (
        -_power_sum(wr, model.positions, 2)
        - _power_sum(wr, lattice_holes(model), 2)
        + pi2_csc2_pi(wr)
    )
    if np.any(special):
        out[special] = _removable_values(model, w[special], second=True)
    return model.T * out


def s_prime(model: WalkModel, z: complex) -> complex:
    """
    First derivative of the action.

    Args:
        model: Walk model.
        z: Point off the non-removable singularities of the real axis.

    Returns:
        S'(z).
    """
    return complex(s_prime_array(model, np.array([z]))[0])


def s_second(model: WalkModel, z: complex) -> complex:
    """
    Second derivative of the action.

    Args:
        model: Walk model.
        z: Point off the non-removable singularities of the real axis.

    Returns:
        S''(z).
    """
    return complex(s_second_array(model, np.array([z]))[0])


def s_value_array(model: WalkModel, z: np.ndarray) -> np.ndarray:
    """Vectorized S(z) in the closed upper half plane."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag < 0):
        raise BranchCutError("S is defined on the closed upper half plane only.")
    w = model.T * z
    if np.any(_integer_points(w)):
        raise SingularityError("S has logarithmic singularities at the lattice points of the real axis.")
    flat = z.ravel()
    particles = np.zeros(flat.shape, dtype=complex)
    lattice = np.zeros(flat.shape, dtype=complex)
    a = model.positions / model.T
    holes = lattice_holes(model) / model.T
    chunk = max(1, CHUNK_ENTRIES // max(a.size + holes.size, 1))
    for start in range(0, flat.size, chunk):
        block = flat[start:start + chunk, None]
        if a.size:
            particles[start:start + chunk] = np.sum(log_h(block - a[None, :]), axis=1)
        if holes.size:
            lattice[start:start + chunk] = np.sum(log_h(block - holes[None, :]), axis=1)
    value = (particles + lattice - log_sin_pi(w.ravel())) / model.T - flat * model.log_odds
    return value.reshape(z.shape)


def s_value(model: WalkModel, z: complex) -> complex:
    """
    The action S(z) with its upper half plane branches.

    Args:
        model: Walk model.
        z: Point of the closed upper half plane, off the lattice points T z in Z when real.

    Returns:
        S(z).
    """
    return complex(s_value_array(model, np.array([z]))[0])


def im_s_on_real_line(model: WalkModel, x: float) -> float:
    """
    Im S on the real axis, a step function with steps of size pi/T.

    Im S(x) = (pi/T) (#{r: a_r > T x} + #{1 <= i <= T-1: i < -T x} + floor(T x)).

    Args:
        model: Walk model.
        x: Real point with T x not a pole of S'.

    Returns:
        The value of the step function at x.
    """
    w = model.T * x
    n = round(w)
    if abs(w - n) < INTEGER_TOLERANCE and pole_coefficient(model, int(n)) != 0:
        raise SingularityError(f"x = {x:g} is a jump point of Im S.")
    if abs(w - n) < INTEGER_TOLERANCE:
        w = float(n)
    above = int(np.count_nonzero(model.positions > w))
    holes = max(0, min(model.T - 1, math.ceil(-w) - 1))
    return math.pi / model.T * (above + holes + math.floor(w))


def im_s_jumps(model: WalkModel, lo: int, hi: int) -> dict[int, float]:
    """Jumps of Im S across the points n/T for integers n in [lo, hi] (left to right)."""
    return {n: -math.pi / model.T * pole_coefficient(model, n) for n in singular_points(model, lo, hi)}

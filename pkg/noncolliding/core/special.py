"""Complex special functions evaluated without overflow in the upper and lower half planes."""

import math
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre
from scipy import special

from noncolliding.exceptions import PoleError

LOG_2 = math.log(2.0)


def log_gamma_complex(z: complex) -> complex:
    """
    Principal branch of log Gamma, continuous on the plane cut along (-inf, 0].

    Args:
        z: Argument, not a nonpositive integer.

    Returns:
        A value L with exp(L) = Gamma(z).
    """
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and float(z.real).is_integer():
        raise PoleError(f"Gamma has a pole at {z.real:g}.")
    return complex(special.loggamma(z))


def log_gamma(z: np.ndarray) -> np.ndarray:
    """Vectorized principal log Gamma; the caller keeps the arguments away from the poles."""
    return special.loggamma(np.asarray(z, dtype=complex))


def log_pochhammer(z: np.ndarray, k: int) -> np.ndarray:
    """log of the rising factorial (z)_k = Gamma(z + k) / Gamma(z)."""
    z = np.asarray(z, dtype=complex)
    return log_gamma(z + k) - log_gamma(z)


def log_sin_pi(w: np.ndarray) -> np.ndarray:
    """
    A logarithm of sin(pi w) that stays accurate far from the real axis.

    In the closed upper half plane this is the branch -i pi w + i pi/2 - log 2 + log(1 - e^{2 pi i w}),
    which differs from the principal logarithm by a multiple of 2 pi i; the lower half plane uses the
    mirror image. Only exp of the result is branch free.
    """
    w = np.asarray(w, dtype=complex)
    upper = np.where(w.imag >= 0, w, np.conj(w))
    with np.errstate(divide="ignore"):
        value = -1j * np.pi * upper + 0.5j * np.pi - LOG_2 + np.log1p(-np.exp(2j * np.pi * upper))
    return np.where(w.imag >= 0, value, np.conj(value))


def pi_cot_pi(w: np.ndarray) -> np.ndarray:
    """pi cot(pi w) through exponentials that cannot overflow."""
    w = np.asarray(w, dtype=complex)
    upper = w.imag >= 0
    e = np.exp(np.where(upper, 2j * np.pi * w, -2j * np.pi * w))
    with np.errstate(divide="ignore", invalid="ignore"):
        cot = np.where(upper, 1j * (e + 1) / (e - 1), -1j * (e + 1) / (e - 1))
    return np.pi * cot


def pi2_csc2_pi(w: np.ndarray) -> np.ndarray:
    """pi^2 / sin^2(pi w)."""
    w = np.asarray(w, dtype=complex)
    e = np.exp(np.where(w.imag >= 0, 2j * np.pi * w, -2j * np.pi * w))
    with np.errstate(divide="ignore", invalid="ignore"):
        return -4 * np.pi**2 * e / (e - 1) ** 2


def log_h(z: np.ndarray) -> np.ndarray:
    """Logarithm with the cut on the negative imaginary axis: arg in (-pi/2, 3pi/2]."""
    z = np.asarray(z, dtype=complex)
    z = np.where(z.imag == 0, z.real + 0j, z)
    value = np.log(z)
    return np.where((z.real < 0) & (z.imag < 0), value + 2j * np.pi, value)


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    nodes, weights = legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights

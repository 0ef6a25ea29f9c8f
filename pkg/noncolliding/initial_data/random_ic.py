"""
Random initial data on the window {-floor(M(1 - alpha)), ..., floor(M alpha)}: independent Bernoulli
sites, or the discrete sine process restricted to the window.
"""

import math
from collections.abc import Sequence
from functools import lru_cache

import numpy as np
from scipy import linalg

from noncolliding.exceptions import DomainError
from noncolliding.log import logger
from noncolliding.modeling import DensityProfile, ParticleConfig, WindowSpec
from noncolliding.simulator.sampling import substream

MAX_SINE_WINDOW = 4097
MAX_RESAMPLES = 1000
DEGENERACY_TOLERANCE = 1e-13


def bernoulli_density(p: float, alpha: float) -> DensityProfile:
    """Local density p with drift p log(alpha / (1 - alpha))."""
    if not 0 < p < 1 or not 0 < alpha < 1:
        raise DomainError("p and alpha must lie in (0, 1).")
    return DensityProfile.lebesgue(p, drift=p * math.log(alpha / (1 - alpha)))


def sine_density(phi: float, alpha: float) -> DensityProfile:
    """Local density q = phi / pi with drift q log(alpha / (1 - alpha))."""
    if not 0 < phi < math.pi or not 0 < alpha < 1:
        raise DomainError("phi must lie in (0, pi) and alpha in (0, 1).")
    q = phi / math.pi
    return DensityProfile.lebesgue(q, drift=q * math.log(alpha / (1 - alpha)))


def bernoulli_window(w: WindowSpec, p: float, seed: int) -> ParticleConfig:
    """
    Each site of the window occupied independently with probability p.

    An empty draw is resampled from the same stream.

    Args:
        w: Window.
        p: Occupation probability.
        seed: Unsigned 64-bit seed.

    Returns:
        The configuration.
    """
    if not 0 < p < 1:
        raise DomainError(f"p must lie in (0, 1), got {p}.")
    rng = substream(seed, 0)
    sites = w.sites
    for _ in range(MAX_RESAMPLES):
        chosen = sites[rng.random(sites.size) < p]
        if chosen.size:
            return ParticleConfig(positions=tuple(int(x) for x in chosen))
    raise DomainError(f"No site selected in {MAX_RESAMPLES} draws; p is too small for the window.")


def sine_window_kernel(w: WindowSpec, phi: float) -> np.ndarray:
    """Discrete sine kernel matrix of density phi / pi on the window sites (a symmetric Toeplitz matrix)."""
    if not 0 < phi < math.pi:
        raise DomainError(f"phi must lie in (0, pi), got {phi}.")
    d = np.arange(w.sites.size, dtype=float)
    row = np.full(d.shape, phi / math.pi)
    row[1:] = np.sin(phi * d[1:]) / (math.pi * d[1:])
    return linalg.toeplitz(row)


@lru_cache(maxsize=8)
def _window_spectrum(w: WindowSpec, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (clipped to [0, 1]) and eigenvectors of the window kernel, shared by all samples."""
    eigenvalues, eigenvectors = linalg.eigh(sine_window_kernel(w, phi))
    return np.clip(eigenvalues, 0.0, 1.0), eigenvectors


def _condition(kernel: np.ndarray, i: int, include: bool) -> None:
    """Condition the kernel in place on site i being occupied (or empty); only later sites are updated."""
    pivot = kernel[i, i] if include else kernel[i, i] - 1
    kernel[i + 1:, i + 1:] -= np.outer(kernel[i + 1:, i], kernel[i, i + 1:]) / pivot


def _sample_projection(vectors: np.ndarray, rng: np.random.Generator) -> list[int]:
    """
    Sample of the projection process spanned by the orthonormal columns of `vectors`.

    The chain rule is run with an incremental Cholesky factor of the projection kernel, so each
    pick costs one matrix-vector product.
    """
    size, rank = vectors.shape
    norms = np.einsum("ij,ij->i", vectors, vectors)
    factor = np.zeros((size, rank))
    picks: list[int] = []
    for k in range(rank):
        weights = np.clip(norms, 0.0, None)
        i = int(rng.choice(size, p=weights / weights.sum()))
        picks.append(i)
        column = vectors @ vectors[i] - factor[:, :k] @ factor[i, :k]
        factor[:, k] = column / math.sqrt(norms[i])
        norms -= factor[:, k] ** 2
        norms[picks] = 0.0
    return sorted(picks)


def sine_window(w: WindowSpec, phi: float, seed: int) -> ParticleConfig:
    """
    Discrete sine process of density phi / pi restricted to the window.

    The window kernel is diagonalized once per (window, phi). Each sample keeps every eigenvector
    independently with probability its eigenvalue, then draws the projection process they span.

    Args:
        w: Window with at most `MAX_SINE_WINDOW` sites.
        phi: Angle in (0, pi).
        seed: Unsigned 64-bit seed.

    Returns:
        The configuration (resampled if empty).
    """
    if w.sites.size > MAX_SINE_WINDOW:
        raise DomainError(
            f"The sine window is limited to {MAX_SINE_WINDOW} sites, got {w.sites.size} (M={w.M})."
        )
    rng = substream(seed, 0)
    eigenvalues, eigenvectors = _window_spectrum(w, phi)
    sites = w.sites
    for _ in range(MAX_RESAMPLES):
        keep = rng.random(eigenvalues.size) < eigenvalues
        if keep.any():
            picks = _sample_projection(eigenvectors[:, keep], rng)
            return ParticleConfig(positions=tuple(int(sites[i]) for i in picks))
        logger.debug(f"Empty sine window draw for M={w.M}, resampling.")
    raise DomainError(f"No site selected in {MAX_RESAMPLES} draws.")


def sine_window_probability(window_kernel: np.ndarray, subset: Sequence[bool]) -> float:
    """
    Probability of the occupation pattern `subset`, as the product of the sequential conditional probabilities.

    Args:
        window_kernel: Kernel matrix on the window.
        subset: Occupation of every site.

    Returns:
        The probability.
    """
    kernel = np.array(window_kernel, dtype=float)
    if len(subset) != kernel.shape[0]:
        raise DomainError("subset must give the occupation of every site.")
    probability = 1.0
    for i, include in enumerate(subset):
        factor = kernel[i, i] if include else 1 - kernel[i, i]
        if factor <= DEGENERACY_TOLERANCE:
            return 0.0
        probability *= factor
        _condition(kernel, i, bool(include))
    return probability


def brute_force_probability(window_kernel: np.ndarray, subset: Sequence[bool]) -> float:
    """(-1)^{|W \\ S|} det(K - I_{W \\ S}) for the occupation pattern S."""
    kernel = np.array(window_kernel, dtype=float)
    empty = np.logical_not(np.asarray(subset, dtype=bool))
    if kernel.shape[0] != empty.size:
        raise DomainError("subset must give the occupation of every site.")
    return float((-1) ** int(empty.sum()) * np.linalg.det(kernel - np.diag(empty.astype(float))))

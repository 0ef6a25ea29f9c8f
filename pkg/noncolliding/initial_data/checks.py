import math

import numpy as np
from pydantic import BaseModel

from noncolliding.exceptions import DomainError
from noncolliding.modeling import ParticleConfig


class DensityCheck(BaseModel):
    """
    Window counts of a configuration against density bounds.

    Attributes:
        min_count: Fewest particles in a window of length D inside [-Q, Q].
        max_count: Most particles in such a window.
        lower_bound: ceil(rho_lo D).
        upper_bound: floor(rho_hi D).
        passed: Whether every window count lies within the bounds.
    """
    min_count: int
    max_count: int
    lower_bound: int
    upper_bound: int
    passed: bool


def check_density(a: ParticleConfig, D: int, Q: int, rho_lo: float, rho_hi: float) -> DensityCheck:  # noqa: N803
    """
    Slide every integer-aligned window of D sites through [-Q, Q] and count the particles in it.

    Args:
        a: Configuration.
        D: Window length.
        Q: Half width of the inspected range.
        rho_lo: Lower density bound.
        rho_hi: Upper density bound.

    Returns:
        The report.
    """
    if not 0 < rho_lo <= rho_hi < 1:
        raise DomainError("Density bounds must satisfy 0 < rho_lo <= rho_hi < 1.")
    if not 1 <= D <= Q:
        raise DomainError(f"Window length must satisfy 1 <= D <= Q, got D={D}, Q={Q}.")
    occupied = np.zeros(2 * Q + 1, dtype=np.int64)
    inside = a.array[(a.array >= -Q) & (a.array <= Q)]
    occupied[inside + Q] = 1
    cumulative = np.concatenate([[0], np.cumsum(occupied)])
    counts = cumulative[D:] - cumulative[:-D]
    lower, upper = math.ceil(rho_lo * D), math.floor(rho_hi * D)
    min_count, max_count = int(counts.min()), int(counts.max())
    return DensityCheck(
        min_count=min_count,
        max_count=max_count,
        lower_bound=lower,
        upper_bound=upper,
        passed=min_count >= lower and max_count <= upper,
    )

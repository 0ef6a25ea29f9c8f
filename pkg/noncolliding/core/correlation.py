from typing import Any, Callable, Sequence

import numpy as np

from noncolliding.exceptions import DuplicatePointError
from noncolliding.modeling import KernelQuery, SpaceTimePoint


def _as_real(value: Any) -> float:
    return float(getattr(value, "value", value))


def correlation_probability(
    kernel: Callable[[KernelQuery], Any],
    points: Sequence[SpaceTimePoint],
) -> float:
    """
    Correlation function det[K(t_a, y_a; t_b, y_b)] at distinct space-time points.

    Args:
        kernel: Correlation kernel; may return a float or a result carrying `.value`.
        points: Distinct space-time points.

    Returns:
        Probability that the process contains every point (1 for no points).
    """
    if len(set(points)) != len(points):
        raise DuplicatePointError("Correlation probabilities need pairwise distinct points.")
    if not points:
        return 1.0
    matrix = np.array([
        [_as_real(kernel(KernelQuery(p1=p, p2=q))) for q in points]
        for p in points
    ])
    return float(np.linalg.det(matrix))

import math
from typing import Callable

import numpy as np

from noncolliding.exceptions import QuadratureError, SingularityError

MAX_PHASE_STEP = math.pi / 4


def count_zeros_in_rectangle(
    f: Callable[[np.ndarray], np.ndarray],
    re_min: float,
    re_max: float,
    im_min: float,
    im_max: float,
    initial_points: int = 800,
    max_points: int = 4_000_000,
) -> int:
    """
    Number of zeros minus poles of f inside an axis-parallel rectangle (argument principle).

    The phase of f is tracked along the positively oriented boundary; segments whose phase
    increment exceeds pi/4 are bisected until none is left.

    Args:
        f: Vectorized function, meromorphic near the rectangle.
        re_min: Left side.
        re_max: Right side.
        im_min: Bottom side.
        im_max: Top side.
        initial_points: Boundary samples before refinement.
        max_points: Sample budget.

    Returns:
        The winding number of f around 0 along the boundary.
    """
    corners = np.array([
        complex(re_min, im_min),
        complex(re_max, im_min),
        complex(re_max, im_max),
        complex(re_min, im_max),
    ])
    lengths = np.abs(np.roll(corners, -1) - corners)
    params = np.concatenate([
        k + np.linspace(0.0, 1.0, max(8, int(initial_points * length / lengths.sum())), endpoint=False)
        for k, length in enumerate(lengths)
    ])
    params = np.append(params, 4.0)

    def boundary(s: np.ndarray) -> np.ndarray:
        edge = np.minimum(np.floor(s).astype(int), 3)
        frac = s - edge
        return corners[edge] + frac * (np.roll(corners, -1)[edge] - corners[edge])

    values = np.asarray(f(boundary(params)), dtype=complex)
    while True:
        if not np.all(np.isfinite(values)) or np.any(values == 0):
            raise SingularityError("A zero or pole of the function lies on the counting contour.")
        steps = np.angle(values[1:] / values[:-1])
        coarse = np.flatnonzero(np.abs(steps) > MAX_PHASE_STEP)
        if coarse.size == 0:
            break
        if params.size + coarse.size > max_points:
            raise QuadratureError("Phase tracking along the contour did not resolve.")
        midpoints = (params[coarse] + params[coarse + 1]) / 2
        params = np.insert(params, coarse + 1, midpoints)
        values = np.insert(values, coarse + 1, np.asarray(f(boundary(midpoints)), dtype=complex))

    winding = steps.sum() / (2 * math.pi)
    count = round(winding)
    if abs(winding - count) > 1e-6:
        raise QuadratureError(f"Non-integer winding number {winding:.6f}.")
    return int(count)

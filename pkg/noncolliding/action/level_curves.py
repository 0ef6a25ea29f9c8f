import cmath
import math
from typing import Literal

import numpy as np
from pydantic import BaseModel

from noncolliding._noncolliding import SearchBox
from noncolliding.action.s_function import s_prime, s_value
from noncolliding.exceptions import ContinuationError, DomainError, NonCollidingError
from noncolliding.modeling import CriticalPoint, WalkModel

MAX_STEPS = 200_000
CORRECTOR_ITERATIONS = 4
MONOTONICITY_SLACK = 1e-10


class LevelCurve(BaseModel):
    """
    Polyline of the level set {Im S = Im S(z_c)} leaving the critical point.

    Attributes:
        points: Vertices, starting at z_c.
        kind: `ascent` when Re S increases away from z_c, `descent` otherwise.
        exit: `real_axis` when truncated at Im z = step, `box` when it left the box.
        monotone: Whether Re S is monotone along the polyline.
    """
    points: list[complex]
    kind: Literal["ascent", "descent"]
    exit: Literal["real_axis", "box"]
    monotone: bool


def tangent_directions(cp: CriticalPoint) -> list[complex]:
    """Unit tangents at z_c: the axes rotated by -arg(S''(z_c))/2, ascent first."""
    theta = -cmath.phase(cp.s2) / 2
    return [cmath.exp(1j * (theta + k * math.pi / 2)) for k in range(4)]


def _trace(model: WalkModel, cp: CriticalPoint, direction: complex, box: SearchBox, step: float, sign: float) -> LevelCurve:
    level = s_value(model, cp.z_c).imag
    points = [cp.z_c]
    z = cp.z_c + step * direction
    exit_kind: Literal["real_axis", "box"] = "box"
    for _ in range(MAX_STEPS):
        for _ in range(CORRECTOR_ITERATIONS):
            derivative = s_prime(model, z)
            normal = 1j * derivative.conjugate() / abs(derivative)
            z = z - (s_value(model, z).imag - level) / abs(derivative) * normal
        points.append(z)
        if z.imag < step:
            exit_kind = "real_axis"
            break
        if not (box.re_min <= z.real <= box.re_max and z.imag <= box.im_max):
            break
        derivative = s_prime(model, z)
        if abs(derivative) < 1e-12:
            raise ContinuationError(f"Level curve reached a second critical point near {z}.")
        z = z + sign * step * derivative.conjugate() / abs(derivative)
    else:
        raise ContinuationError("Level curve did not leave the box.")

    real_parts = np.array([s_value(model, p).real for p in points if p.imag > 0])
    increments = np.diff(real_parts) * sign
    monotone = bool(np.all(increments > -MONOTONICITY_SLACK * (1 + np.abs(real_parts[1:]))))
    return LevelCurve(points=points, kind="ascent" if sign > 0 else "descent", exit=exit_kind, monotone=monotone)


def level_curves(model: WalkModel, cp: CriticalPoint, box: SearchBox, step: float = 0.01) -> list[LevelCurve]:
    """
    The four curves {Im S = Im S(z_c)} through the critical point.

    Each curve is continued by a predictor step along +-conj(S')/|S'| followed by corrector steps
    normal to the level set, until it leaves the box or comes within `step` of the real axis.

    Args:
        model: Walk model.
        cp: Its critical point.
        box: Rectangle bounding the picture.
        step: Arc length of one predictor step.

    Returns:
        Four polylines: ascent, descent, ascent, descent.
    """
    if not box.contains(cp.z_c):
        raise DomainError("The box must contain the critical point.")
    curves = []
    for k, direction in enumerate(tangent_directions(cp)):
        sign = 1.0 if k % 2 == 0 else -1.0
        try:
            curves.append(_trace(model, cp, direction, box, step, sign))
        except NonCollidingError as error:
            if isinstance(error, ContinuationError):
                raise
            raise ContinuationError(f"Level curve {k} hit a singularity: {error}") from error
    return curves

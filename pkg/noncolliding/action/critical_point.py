from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import optimize

from noncolliding._noncolliding import NonColliding, SearchBox
from noncolliding.action.s_function import s_prime, s_prime_array, s_second
from noncolliding.core.roots import count_zeros_in_rectangle
from noncolliding.exceptions import MultipleRootError, NoRootError, NonCollidingError
from noncolliding.log import logger
from noncolliding.modeling import CriticalPoint, DensityProfile, WalkModel

RESIDUAL_TOLERANCE = 1e-10
GRID_REAL_POINTS = 41
GRID_IMAG_POINTS = (0.1, 0.5, 1.5, 4.0, 10.0)


def _newton(model: WalkModel, start: complex) -> Optional[complex]:
    try:
        root = optimize.newton(
            lambda z: s_prime(model, z),
            start,
            fprime=lambda z: s_second(model, z),
            tol=1e-14,
            maxiter=100,
        )
    except (RuntimeError, ArithmeticError, NonCollidingError):
        return None
    root = complex(root)
    if not np.isfinite(root) or root.imag <= 0:
        return None
    if abs(s_prime(model, root)) >= RESIDUAL_TOLERANCE:
        return None
    return root


def _starting_points(
    model: WalkModel,
    box: SearchBox,
    guess: Optional[complex],
    profile: Optional[DensityProfile],
) -> list[complex]:
    starts = []
    if guess is not None:
        starts.append(complex(guess))
    if profile is not None:
        from noncolliding.action.slopes import solve_limit_slope

        try:
            starts.append(solve_limit_slope(profile, model.beta).z)
        except NonCollidingError as error:
            logger.debug(f"No profile prediction for the critical point: {error}")
    re = np.linspace(box.re_min, box.re_max, GRID_REAL_POINTS)[1:-1]
    imag = [y for y in GRID_IMAG_POINTS if box.im_min < y < box.im_max]
    starts.extend(complex(x, y) for y in imag for x in re)
    return starts


def count_critical_points(model: WalkModel, box: Optional[SearchBox] = None) -> int:
    """Number of zeros of S' inside the search box (argument principle)."""
    box = box or NonColliding.config.search_box
    return count_zeros_in_rectangle(
        lambda z: s_prime_array(model, z),
        box.re_min, box.re_max, box.im_min, box.im_max,
    )


def find_critical_point(
    model: WalkModel,
    guess: Optional[complex] = None,
    profile: Optional[DensityProfile] = None,
    box: Optional[SearchBox] = None,
    certify: bool = True,
) -> CriticalPoint:
    """
    Upper half plane root of S'.

    Newton iterations with the analytic S'' start from the caller guess, the limit slope prediction
    of the profile and a coarse grid of the search box. The root is then certified unique by
    counting the zeros of S' inside the box.

    Args:
        model: Walk model.
        guess: Optional starting point.
        profile: Optional local density whose limit slope predicts the root.
        box: Search box, the library default when `None`.
        certify: Whether to count the zeros of S' in the box.

    Returns:
        The critical point.
    """
    return _find_critical_point(model, guess, profile, box or NonColliding.config.search_box, certify)


@lru_cache(maxsize=512)
def _find_critical_point(
    model: WalkModel,
    guess: Optional[complex],
    profile: Optional[DensityProfile],
    box: SearchBox,
    certify: bool,
) -> CriticalPoint:
    root = None
    for start in _starting_points(model, box, guess, profile):
        root = _newton(model, start)
        if root is not None and box.contains(root):
            break
        root = None

    if certify:
        count = count_critical_points(model, box)
        if count == 0:
            raise NoRootError(f"S' has no zero in the search box for N={model.N}, T={model.T}.")
        if count > 1:
            raise MultipleRootError(f"S' has {count} zeros in the search box, expected one.")
    if root is None:
        raise NoRootError(f"Newton iterations did not locate the zero of S' for N={model.N}, T={model.T}.")

    logger.debug(f"Critical point z_c = {root:.12g} for N={model.N}, T={model.T}, beta={model.beta}.")
    return CriticalPoint(z_c=root, residual=abs(s_prime(model, root)), s2=s_second(model, root))

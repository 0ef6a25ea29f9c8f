from noncolliding.action.critical_point import count_critical_points, find_critical_point
from noncolliding.action.level_curves import LevelCurve, level_curves
from noncolliding.action.s_function import im_s_on_real_line, s_prime, s_second, s_value
from noncolliding.action.slopes import (
    beta_effective,
    limit_action_prime,
    slope_bernoulli_ic,
    slope_lebesgue,
    slope_sine_ic,
    slope_staircase,
    solve_limit_slope,
)

__all__ = [
    "LevelCurve",
    "beta_effective",
    "count_critical_points",
    "find_critical_point",
    "im_s_on_real_line",
    "level_curves",
    "limit_action_prime",
    "s_prime",
    "s_second",
    "s_value",
    "slope_bernoulli_ic",
    "slope_lebesgue",
    "slope_sine_ic",
    "slope_staircase",
    "solve_limit_slope",
]

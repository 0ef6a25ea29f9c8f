from noncolliding.initial_data.checks import DensityCheck, check_density
from noncolliding.initial_data.config_io import read_config, write_config
from noncolliding.initial_data.drift import drift_finite, drift_from_global, drift_from_profile, profile_density
from noncolliding.initial_data.profiles import ProfileFunction, from_profile, packed, staircase_config
from noncolliding.initial_data.random_ic import (
    bernoulli_density,
    bernoulli_window,
    sine_density,
    sine_window,
    sine_window_probability,
)

__all__ = [
    "DensityCheck",
    "ProfileFunction",
    "bernoulli_density",
    "bernoulli_window",
    "check_density",
    "drift_finite",
    "drift_from_global",
    "drift_from_profile",
    "from_profile",
    "packed",
    "profile_density",
    "read_config",
    "sine_density",
    "sine_window",
    "sine_window_probability",
    "staircase_config",
    "write_config",
]

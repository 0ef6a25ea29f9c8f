from noncolliding.kernels.bernoulli import (
    KernelComparison,
    bernoulli_correlation,
    k_bernoulli,
    k_bernoulli_shifted_contour,
    kernel_grid,
    universality_gap,
    w_residue_sum,
    w_residue_sum_by_quadrature,
)
from noncolliding.kernels.dyson import k_dbm
from noncolliding.kernels.poisson import k_poisson, poisson_rates
from noncolliding.kernels.sine import (
    complement_kernel,
    discrete_sine,
    equal_time_gauge,
    extended_sine,
    extended_sine_closed_form,
    sine_correlation,
)
from noncolliding.kernels.tilings import (
    TilingEnumeration,
    k_paths,
    k_paths_scaled,
    k_tilings,
    tiling_count,
    tiling_enumeration,
    tiling_spec,
    trapezoid_row,
)

__all__ = [
    "KernelComparison",
    "TilingEnumeration",
    "bernoulli_correlation",
    "complement_kernel",
    "discrete_sine",
    "equal_time_gauge",
    "extended_sine",
    "extended_sine_closed_form",
    "k_bernoulli",
    "k_bernoulli_shifted_contour",
    "k_dbm",
    "k_paths",
    "k_paths_scaled",
    "k_poisson",
    "k_tilings",
    "kernel_grid",
    "poisson_rates",
    "sine_correlation",
    "tiling_count",
    "tiling_enumeration",
    "tiling_spec",
    "trapezoid_row",
    "universality_gap",
    "w_residue_sum",
    "w_residue_sum_by_quadrature",
]

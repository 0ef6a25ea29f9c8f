from noncolliding.core.correlation import correlation_probability
from noncolliding.core.quadrature import circle_quadrature, integrate_vertical_line, vertical_line_integral
from noncolliding.core.roots import count_zeros_in_rectangle
from noncolliding.core.special import log_gamma_complex

__all__ = [
    "circle_quadrature",
    "correlation_probability",
    "count_zeros_in_rectangle",
    "integrate_vertical_line",
    "log_gamma_complex",
    "vertical_line_integral",
]

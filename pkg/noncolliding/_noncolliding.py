from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from noncolliding.exceptions import DomainError
from noncolliding.log import logger
from noncolliding.modeling import QuadratureSettings

THREADS_ENV_VAR = "NONCOLLIDING_THREADS"


def _threads_from_env() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        threads = int(raw)
    except ValueError:
        logger.warning_once(f"Ignoring non-integer {THREADS_ENV_VAR}={raw!r}, using 1 thread.")
        return 1
    return max(threads, 1)


@dataclass(frozen=True)
class SearchBox:
    """Rectangle of the upper half plane searched for critical points."""
    re_min: float = -20.0
    re_max: float = 20.0
    im_min: float = 0.02
    im_max: float = 20.0

    def contains(self, z: complex) -> bool:
        return self.re_min < z.real < self.re_max and self.im_min < z.imag < self.im_max


class NonColliding:
    """
    Library-wide numerical defaults.

    Every operation takes explicit settings; `None` falls back to the values held here.

    Examples:
        Tighten the quadrature and enlarge the critical point search box.
        ```python
        from noncolliding import NonColliding, SearchBox
        from noncolliding.modeling import QuadratureSettings

        NonColliding.init(
            quadrature=QuadratureSettings(abs_tol=1e-14),
            search_box=SearchBox(re_min=-40, re_max=40, im_min=0.01, im_max=40),
        )
        ```
    """
    @dataclass
    class _Config:
        quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)
        search_box: SearchBox = field(default_factory=SearchBox)
        kernel_error_tolerance: float = 1e-11
        extended_precision_max_size: int = 400
        float_sampler_min_particles: int = 41
        threads: int = field(default_factory=_threads_from_env)

    config = _Config()

    @staticmethod
    def init(
        quadrature: Optional[QuadratureSettings] = None,
        search_box: Optional[SearchBox] = None,
        kernel_error_tolerance: Optional[float] = None,
        extended_precision_max_size: Optional[int] = None,
        float_sampler_min_particles: Optional[int] = None,
        threads: Optional[int] = None,
    ) -> None:
        """
        Override library defaults. Arguments left to `None` keep their current value.

        Args:
            quadrature: Default quadrature settings.
            search_box: Rectangle searched and certified by the critical point finder.
            kernel_error_tolerance: Absolute error above which kernel evaluation escalates.
            extended_precision_max_size: Largest N + t for which mpmath evaluation is attempted.
            float_sampler_min_particles: Particle count from which the sampler uses floating point.
            threads: Worker threads used by ensemble sampling.
        """
        if kernel_error_tolerance is not None and kernel_error_tolerance <= 0:
            raise DomainError("kernel_error_tolerance must be positive.")
        if threads is not None and threads < 1:
            raise DomainError("threads must be at least 1.")

        config = NonColliding.config
        if quadrature is not None:
            config.quadrature = quadrature
        if search_box is not None:
            config.search_box = search_box
        if kernel_error_tolerance is not None:
            config.kernel_error_tolerance = kernel_error_tolerance
        if extended_precision_max_size is not None:
            config.extended_precision_max_size = extended_precision_max_size
        if float_sampler_min_particles is not None:
            config.float_sampler_min_particles = float_sampler_min_particles
        if threads is not None:
            config.threads = threads

    @staticmethod
    def reset() -> None:
        """Restore the defaults."""
        NonColliding.config = NonColliding._Config()


def quadrature_settings(settings: Optional[QuadratureSettings]) -> QuadratureSettings:
    return NonColliding.config.quadrature if settings is None else settings

import math
from fractions import Fraction
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import Self

from noncolliding.status_messages import WarningMessage
from noncolliding.utils.interval import Interval


class ParticleConfig(BaseModel):
    """
    Point of the Weyl chamber: strictly increasing integer particle positions.

    Attributes:
        positions: Lattice sites occupied by the particles, in increasing order.
    """
    model_config = ConfigDict(frozen=True)

    positions: tuple[int, ...]

    @field_validator("positions")
    @classmethod
    def check_strictly_increasing(cls, positions: tuple[int, ...]) -> tuple[int, ...]:
        if len(positions) == 0:
            raise ValueError("a configuration holds at least one particle")
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise ValueError(f"positions must be strictly increasing, got {positions}")
        return positions

    @classmethod
    def of(cls, *positions: int) -> "ParticleConfig":
        return cls(positions=tuple(int(p) for p in positions))

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.positions, dtype=np.int64)

    def shifted(self, offset: int) -> "ParticleConfig":
        return ParticleConfig(positions=tuple(p + offset for p in self.positions))

    def __contains__(self, site: int) -> bool:
        return site in self.positions


class SpaceTimePoint(BaseModel):
    """
    Space-time point of a trajectory.

    Attributes:
        t: Time.
        x: Lattice site.
    """
    model_config = ConfigDict(frozen=True)

    t: int
    x: int


class KernelQuery(BaseModel):
    """
    Pair of space-time points (t1, x1; t2, x2) at which a correlation kernel is evaluated.

    Attributes:
        p1: First point.
        p2: Second point.
    """
    model_config = ConfigDict(frozen=True)

    p1: SpaceTimePoint
    p2: SpaceTimePoint

    @classmethod
    def at(cls, t1: int, x1: int, t2: int, x2: int) -> "KernelQuery":
        return cls(p1=SpaceTimePoint(t=t1, x=x1), p2=SpaceTimePoint(t=t2, x=x2))

    @property
    def t1(self) -> int:
        return self.p1.t

    @property
    def x1(self) -> int:
        return self.p1.x

    @property
    def t2(self) -> int:
        return self.p2.t

    @property
    def x2(self) -> int:
        return self.p2.x

    @property
    def coincident(self) -> bool:
        return self.p1 == self.p2

    def shifted(self, dx: int) -> "KernelQuery":
        return KernelQuery.at(self.t1, self.x1 + dx, self.t2, self.x2 + dx)


class QuadratureSettings(BaseModel):
    """
    Accuracy controls shared by the line and circle quadratures.

    Attributes:
        abs_tol: Target absolute accuracy.
        max_panels: Panel budget of the line quadrature (node doublings for the circle).
        panel_order: Gauss-Legendre nodes per panel.
        panel_width: Width of one panel along the line.
    """
    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(default=1e-13, gt=0)
    max_panels: int = Field(default=20_000, gt=0)
    panel_order: int = Field(default=16, gt=0)
    panel_width: float = Field(default=0.5, gt=0)


class WalkModel(BaseModel):
    """
    Noncolliding Bernoulli random walk observed at time T.

    Attributes:
        a: Initial configuration.
        beta: Jump probability of each particle.
        T: Observation time.
    """
    model_config = ConfigDict(frozen=True)

    a: ParticleConfig
    beta: float = Field(gt=0, lt=1)
    T: int = Field(ge=1)

    @property
    def N(self) -> int:  # noqa: N802
        return len(self.a.positions)

    @property
    def positions(self) -> np.ndarray:
        return np.asarray(self.a.positions, dtype=float)

    @property
    def log_odds(self) -> float:
        """Constant term log(1/beta - 1) of the action."""
        return math.log(1 / self.beta - 1)

    @property
    def rational_beta(self) -> Fraction:
        return Fraction(self.beta).limit_denominator(10**9)

    def recentered(self, x: int, t: Optional[int] = None) -> "WalkModel":
        """Same walk seen from site x at time t, i.e. with positions a - x and horizon t."""
        return WalkModel(a=self.a.shifted(-x), beta=self.beta, T=self.T if t is None else t)


class ComplexSlope(BaseModel):
    """
    Complex slope parameterizing the extended sine kernel.

    Attributes:
        u: Slope in the upper half plane.
    """
    model_config = ConfigDict(frozen=True)

    u: complex

    @field_validator("u")
    @classmethod
    def check_upper_half_plane(cls, u: complex) -> complex:
        if not u.imag > 0:
            raise ValueError(f"slope must lie in the upper half plane, got {u}")
        return u

    @classmethod
    def from_critical_point(cls, z: complex) -> "ComplexSlope":
        return cls(u=z / (z + 1))

    @property
    def phi(self) -> float:
        return math.pi - math.atan2(self.u.imag, self.u.real)

    @property
    def q(self) -> float:
        """Particle density 1 - arg(u)/pi."""
        return self.phi / math.pi

    @property
    def modulus(self) -> float:
        return abs(self.u)

    @property
    def z(self) -> complex:
        """Point u/(1-u) of the action plane."""
        return self.u / (1 - self.u)


class CriticalPoint(BaseModel):
    """
    Upper half plane critical point of the action.

    Attributes:
        z_c: Location of the root of S'.
        residual: |S'(z_c)|.
        s2: S''(z_c).
    """
    model_config = ConfigDict(frozen=True)

    z_c: complex
    residual: float
    s2: complex

    @model_validator(mode="after")
    def check_root(self) -> Self:
        if not self.z_c.imag > 0:
            raise ValueError("critical point must lie in the upper half plane")
        if not self.residual < 1e-10:
            raise ValueError(f"residual {self.residual:.3e} is not below 1e-10")
        if not abs(self.s2) > 0:
            raise ValueError("critical point is degenerate")
        return self

    @property
    def slope(self) -> ComplexSlope:
        return ComplexSlope.from_critical_point(self.z_c)


class DensityProfile(BaseModel):
    """
    Piecewise-constant local density with constant tails, plus a drift constant.

    Attributes:
        pieces: Ordered disjoint pieces (v_lo, v_hi, rho).
        left_tail_rho: Density left of the first piece.
        right_tail_rho: Density right of the last piece.
        drift: Drift constant d taken at the cutoff `drift_cutoff`.
        drift_cutoff: Reference cutoff R_ref of the drift.
    """
    model_config = ConfigDict(frozen=True)

    pieces: tuple[tuple[float, float, float], ...] = ()
    left_tail_rho: float = Field(ge=0, le=1)
    right_tail_rho: float = Field(ge=0, le=1)
    drift: float = 0.0
    drift_cutoff: float = Field(default=1.0, gt=0)

    @field_validator("pieces")
    @classmethod
    def check_pieces(cls, pieces: tuple[tuple[float, float, float], ...]) -> tuple[tuple[float, float, float], ...]:
        for lo, hi, rho in pieces:
            if not lo < hi:
                raise ValueError(f"piece ({lo}, {hi}) is empty")
            if not 0 <= rho <= 1:
                raise ValueError(f"density {rho} outside [0, 1]")
        for (_, hi, _), (lo, _, _) in zip(pieces, pieces[1:]):
            if lo < hi:
                raise ValueError("pieces must be ordered and disjoint")
        return pieces

    @classmethod
    def lebesgue(cls, q: float, drift: float = 0.0) -> "DensityProfile":
        return cls(left_tail_rho=q, right_tail_rho=q, drift=drift)

    @classmethod
    def staircase(cls, h: float) -> "DensityProfile":
        """Density 1/2 on the negative axis, 1/3 on (0, 3h), 1/2 beyond."""
        return cls(
            pieces=((0.0, 3 * h, 1 / 3),),
            left_tail_rho=0.5,
            right_tail_rho=0.5,
            drift=0.0,
            drift_cutoff=max(1.0, 3 * h),
        )

    @property
    def breakpoints(self) -> list[float]:
        return sorted({v for lo, hi, _ in self.pieces for v in (lo, hi)})

    @property
    def total_mass(self) -> float:
        if self.left_tail_rho > 0 or self.right_tail_rho > 0:
            return math.inf
        return sum(rho * (hi - lo) for lo, hi, rho in self.pieces)

    def segments(self) -> list[tuple[float, float, float]]:
        """All pieces including the tails, as (lo, hi, rho) with infinite ends."""
        if not self.pieces:
            if self.left_tail_rho != self.right_tail_rho:
                return [(-math.inf, 0.0, self.left_tail_rho), (0.0, math.inf, self.right_tail_rho)]
            return [(-math.inf, math.inf, self.left_tail_rho)]
        segments = [(-math.inf, self.pieces[0][0], self.left_tail_rho)]
        for (lo, hi, rho), following in zip(self.pieces, [*self.pieces[1:], None]):
            segments.append((lo, hi, rho))
            if following is not None and following[0] > hi:
                segments.append((hi, following[0], 0.0))
        segments.append((self.pieces[-1][1], math.inf, self.right_tail_rho))
        return segments

    def density_at(self, v: float) -> float:
        for lo, hi, rho in self.segments():
            if lo <= v < hi:
                return rho
        return self.right_tail_rho


class SineQuery(BaseModel):
    """
    Argument (t, x; s, y) of the extended sine kernel.
    """
    model_config = ConfigDict(frozen=True)

    t: int
    x: int
    s: int
    y: int

    @property
    def coincident(self) -> bool:
        return self.t == self.s and self.x == self.y

    def shifted(self, dt: int, dx: int) -> "SineQuery":
        return SineQuery(t=self.t + dt, x=self.x + dx, s=self.s + dt, y=self.y + dx)


class TilingSpec(BaseModel):
    """
    Lozenge tilings of the trapezoid with L cut points y on its lower side.

    Attributes:
        N: Number of paths (width of the upper side).
        L: Height of the trapezoid.
        y: Cut points, strictly increasing inside {-N-L+1, ..., 0}.
    """
    model_config = ConfigDict(frozen=True)

    N: int = Field(ge=1)
    L: int = Field(ge=1)
    y: tuple[int, ...]

    @model_validator(mode="after")
    def check_cut_points(self) -> Self:
        if len(self.y) != self.L:
            raise ValueError(f"expected {self.L} cut points, got {len(self.y)}")
        if any(b <= a for a, b in zip(self.y, self.y[1:])):
            raise ValueError("cut points must be strictly increasing")
        if self.y[0] < -self.N - self.L + 1 or self.y[-1] > 0:
            raise ValueError(f"cut points must lie in [{-self.N - self.L + 1}, 0]")
        return self

    @property
    def path_starts(self) -> tuple[int, ...]:
        """Lower ends of the paths: the sites of the lower side that are not cut points."""
        cut = set(self.y)
        return tuple(s for s in range(-self.N - self.L + 1, 1) if s not in cut)


class RealTimeQuery(BaseModel):
    """
    Argument (tau1, x1; tau2, x2) of the Poisson walk kernel.
    """
    model_config = ConfigDict(frozen=True)

    tau1: float = Field(gt=0)
    x1: int
    tau2: float = Field(gt=0)
    x2: int


class DysonQuery(BaseModel):
    """
    Argument (tau1, xi1; tau2, xi2) of the Dyson Brownian motion kernel.
    """
    model_config = ConfigDict(frozen=True)

    tau1: float = Field(gt=0)
    xi1: float
    tau2: float = Field(gt=0)
    xi2: float


class WindowSpec(BaseModel):
    """
    Window {-floor(M(1-alpha)), ..., floor(M alpha)} of random initial data.
    """
    model_config = ConfigDict(frozen=True)

    M: int = Field(ge=1)
    alpha: float = Field(gt=0, lt=1)

    @property
    def left(self) -> int:
        return -math.floor(self.M * (1 - self.alpha))

    @property
    def right(self) -> int:
        return math.floor(self.M * self.alpha)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.left, self.right + 1, dtype=np.int64)


class EmpiricalEstimate(BaseModel):
    """
    Monte Carlo frequency with its standard error.

    Attributes:
        mean: Observed frequency.
        stderr: Binomial standard error of the frequency.
        n: Number of samples.
    """
    model_config = ConfigDict(frozen=True)

    mean: float
    stderr: float = Field(ge=0)
    n: int = Field(ge=0)

    def interval(self, k: float = 4.0) -> Interval:
        return Interval(min=self.mean - k * self.stderr, max=self.mean + k * self.stderr)


class _NumericalOutput(BaseModel):
    """
    Base of numerical results that may carry warnings.

    Attributes:
        warnings: List of warnings
    """
    warnings: Optional[list[WarningMessage]] = None

    @property
    def has_warnings(self) -> bool:
        return isinstance(self.warnings, list) and len(self.warnings) > 0

    def add_warning(self, warning: WarningMessage) -> None:
        if self.warnings is None:
            self.warnings = []
        if warning.code not in {w.code for w in self.warnings}:
            self.warnings.append(warning)


class BernoulliKernelResult(_NumericalOutput):
    """
    Value of the finite-N Bernoulli kernel with its numerical diagnostics.

    Attributes:
        value: Kernel value.
        im_leak: Discarded imaginary part.
        z_line_abscissa: Real part of the z-line used.
        w_pole_list: Integer w-poles inside the w-contour.
        method: Evaluation route.
        condition: Ratio of the absolute integral of the residue terms to the modulus of the result.
        error_estimate: Estimated absolute error of `value`.
    """
    value: float
    im_leak: float = 0.0
    z_line_abscissa: float
    w_pole_list: list[int]
    method: Literal["empty", "line", "saddle", "extended"] = "line"
    condition: float = 1.0
    error_estimate: float = 0.0

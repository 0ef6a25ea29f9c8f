from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

ScenarioName = Literal[
    "sample",
    "kernel-eval",
    "kernel-compare",
    "critical-point",
    "slope",
    "tilings-limit",
    "poisson-limit",
    "dyson-limit",
    "random-ic",
]


class ScenarioConfig(BaseModel):
    """
    One scenario run, read from a JSON document.

    Attributes:
        scenario: Scenario name.
        parameters: Scenario parameters, validated by the scenario's own model.
        seed: Unsigned 64-bit seed of every random draw in the run.
        output_dir: Directory receiving the artifacts.
    """
    model_config = ConfigDict(extra="forbid")

    scenario: ScenarioName
    parameters: dict = Field(default_factory=dict)
    seed: int = Field(default=0, ge=0, le=2**64 - 1)
    output_dir: Path


class _Parameters(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class WalkParameters(_Parameters):
    a: tuple[int, ...]
    beta: float = Field(gt=0, lt=1)

    @field_validator("a")
    @classmethod
    def check_increasing(cls, a: tuple[int, ...]) -> tuple[int, ...]:
        if not a or any(y <= x for x, y in zip(a, a[1:])):
            raise ValueError("a must be a nonempty strictly increasing list")
        return a


class SampleParameters(WalkParameters):
    T: int = Field(ge=1)
    n: int = Field(default=1, ge=1)
    threads: Optional[int] = Field(default=None, ge=1)
    points: list[list[tuple[int, int]]] = Field(default_factory=list)


class KernelEvalParameters(WalkParameters):
    queries: list[tuple[int, int, int, int]]
    contour: Literal["auto", "line", "saddle"] = "auto"


class ProfileParameters(_Parameters):
    slope: float = 2.0
    intercept: float = 0.0


class KernelCompareParameters(_Parameters):
    profile: ProfileParameters = Field(default_factory=ProfileParameters)
    beta: float = Field(default=0.5, gt=0, lt=1)
    N_values: list[int] = Field(min_length=1)
    eta: float = Field(default=0.6, gt=0, lt=1)
    dt_max: int = Field(default=3, ge=0)
    dx_max: int = Field(default=3, ge=0)


class CriticalPointParameters(WalkParameters):
    T: int = Field(ge=1)
    level_curve_step: float = Field(default=0.01, gt=0)


class SlopeParameters(_Parameters):
    kind: Literal["lebesgue", "staircase", "bernoulli-ic", "sine-ic", "profile"]
    beta: float = Field(gt=0, lt=1)
    q: float = Field(default=0.5, gt=0, lt=1)
    d: float = 0.0
    h: float = Field(default=0.1, gt=0)
    p: float = Field(default=0.5, gt=0, lt=1)
    alpha: float = Field(default=0.5, gt=0, lt=1)
    phi: float = Field(default=1.5707963267948966, gt=0)
    profile: ProfileParameters = Field(default_factory=ProfileParameters)


class TilingsLimitParameters(WalkParameters):
    query: tuple[int, int, int, int]
    L_values: list[int] = Field(min_length=1)


class PoissonLimitParameters(_Parameters):
    a: tuple[int, ...]
    queries: list[tuple[float, int, float, int]] = Field(min_length=1)
    betas: list[float] = Field(min_length=1)


class DysonLimitParameters(_Parameters):
    alpha: tuple[float, ...]
    beta: float = Field(default=0.5, gt=0, lt=1)
    points: tuple[tuple[float, float], tuple[float, float]]
    M_values: list[int] = Field(min_length=1)


class RandomICParameters(_Parameters):
    kind: Literal["bernoulli", "sine"]
    beta: float = Field(default=0.5, gt=0, lt=1)
    p: float = Field(default=0.5, gt=0, lt=1)
    phi: float = Field(default=1.5707963267948966, gt=0)
    alpha: float = Field(default=2 / 3, gt=0, lt=1)
    eta: float = Field(default=0.6, gt=0, lt=1)
    M_values: list[int] = Field(min_length=1)
    samples: int = Field(default=200, ge=1)
    dx_max: int = Field(default=2, ge=0)

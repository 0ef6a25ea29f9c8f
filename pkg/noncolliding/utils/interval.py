from typing import Any, Union

from pydantic import BaseModel, model_validator
from typing_extensions import Self


class Interval(BaseModel):
    """
    Closed interval of reals, used for confidence bands of Monte Carlo estimates.

    Attributes:
        min: Lower bound of the interval.
        max: Upper bound of the interval.
    """
    min: float
    max: float

    @property
    def mean(self) -> float:
        return (self.min + self.max) / 2

    @property
    def width(self) -> float:
        return self.max - self.min

    @model_validator(mode="after")
    def check_order(self) -> Self:
        if self.min > self.max:
            raise ValueError("min value must be lower than max value")
        return self

    def __contains__(self, value: float) -> bool:
        return self.min <= value <= self.max

    def __add__(self, other: Union["Interval", int, float]) -> "Interval":
        if isinstance(other, Interval):
            return Interval(min=self.min + other.min, max=self.max + other.max)
        return Interval(min=self.min + other, max=self.max + other)

    def __mul__(self, other: Union[int, float]) -> "Interval":
        bounds = sorted((other * self.min, other * self.max))
        return Interval(min=bounds[0], max=bounds[1])

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Interval):
            return self.min == other.min and self.max == other.max
        return self.min == other and self.max == other

    def __str__(self) -> str:
        return f"[{self.min:.6g}, {self.max:.6g}]"

import operator

import pytest
from pydantic import ValidationError

from noncolliding.modeling import EmpiricalEstimate
from noncolliding.utils.interval import Interval


def test_interval_formats():
    interval = Interval(min=0.125, max=0.5)
    assert str(interval) == "[0.125, 0.5]"


def test_interval_order():
    with pytest.raises(ValidationError):
        Interval(min=1, max=0)


@pytest.mark.parametrize("val_1,val_2,op,result", [
    (Interval(min=1, max=2), Interval(min=0, max=1), operator.add, Interval(min=1, max=3)),
    (Interval(min=1, max=2), 1, operator.add, Interval(min=2, max=3)),
    (1, Interval(min=1, max=2), operator.add, Interval(min=2, max=3)),
    (Interval(min=1, max=2), 2, operator.mul, Interval(min=2, max=4)),
    (Interval(min=1, max=2), -1, operator.mul, Interval(min=-2, max=-1)),
    (-1, Interval(min=1, max=2), operator.mul, Interval(min=-2, max=-1)),
])
def test_interval_arithmetic(val_1, val_2, op, result):
    assert op(val_1, val_2) == result


def test_interval_contains():
    interval = Interval(min=0.25, max=0.75)
    assert 0.5 in interval
    assert 0.25 in interval
    assert 0.8 not in interval
    assert interval.mean == 0.5
    assert interval.width == 0.5


def test_estimate_interval():
    estimate = EmpiricalEstimate(mean=0.375, stderr=0.01, n=1000)
    band = estimate.interval(4)
    assert band.min == pytest.approx(0.335)
    assert band.max == pytest.approx(0.415)
    assert 0.375 in band

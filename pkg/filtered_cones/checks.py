"""
Evaluation of (in)equalities between extended reals.

Sides may be given as values or as zero-argument callables; a side that is
infinite, or whose computation hits an undefined sum, makes the check
vacuous. Finite inequalities allow a tolerance, equalities are exact.
"""

import math
from typing import Callable, Union

from .exceptions import DegenerateValueError
from .models import InequalityCheck

DEFAULT_TOLERANCE = 1e-9

Side = Union[float, Callable[[], float]]


def _resolve(side: Side) -> float:
    return side() if callable(side) else float(side)


def _evaluate(name: str, lhs: Side, rhs: Side, relation: str, tolerance: float) -> InequalityCheck:
    try:
        left, right = _resolve(lhs), _resolve(rhs)
    except DegenerateValueError:
        return InequalityCheck(name, math.nan, math.nan, relation, holds=True, vacuous=True)

    if math.isinf(left) or math.isinf(right) or math.isnan(left) or math.isnan(right):
        return InequalityCheck(name, left, right, relation, holds=True, vacuous=True)

    if relation == "<=":
        slack = right - left
        return InequalityCheck(name, left, right, relation, slack >= -tolerance, slack=slack)
    if relation == ">=":
        slack = left - right
        return InequalityCheck(name, left, right, relation, slack >= -tolerance, slack=slack)
    if relation == "==":
        return InequalityCheck(name, left, right, relation, left == right, slack=0.0 if left == right else -abs(left - right))
    raise ValueError(f"unknown relation {relation!r}")


def at_most(name: str, lhs: Side, rhs: Side, tolerance: float = DEFAULT_TOLERANCE) -> InequalityCheck:
    """lhs ≤ rhs."""
    return _evaluate(name, lhs, rhs, "<=", tolerance)


def at_least(name: str, lhs: Side, rhs: Side, tolerance: float = DEFAULT_TOLERANCE) -> InequalityCheck:
    """lhs ≥ rhs."""
    return _evaluate(name, lhs, rhs, ">=", tolerance)


def equal(name: str, lhs: Side, rhs: Side) -> InequalityCheck:
    """Exact equality of finite values."""
    return _evaluate(name, lhs, rhs, "==", 0.0)


def exactly(name: str, lhs: float, rhs: float) -> InequalityCheck:
    """
    Exact equality that also compares infinities.

    Used where both sides are extended reals that must agree bit for bit,
    such as barcode invariants against their rank oracle.
    """
    holds = lhs == rhs or (math.isnan(lhs) and math.isnan(rhs))
    return InequalityCheck(name, lhs, rhs, "==", holds, vacuous=False, slack=None)


def within(name: str, first: Side, second: Side, bound: Side, tolerance: float = DEFAULT_TOLERANCE) -> InequalityCheck:
    """|first − second| ≤ bound."""

    def difference() -> float:
        a, b = _resolve(first), _resolve(second)
        if math.isinf(a) or math.isinf(b):
            raise DegenerateValueError("difference of infinite invariants")
        return abs(a - b)

    return _evaluate(name, difference, bound, "<=", tolerance)


def truth(name: str, value: bool) -> InequalityCheck:
    """A boolean property recorded as a check."""
    return InequalityCheck(name, float(value), 1.0, "==", bool(value))

import math

from filtered_cones import checks
from filtered_cones.exceptions import DegenerateValueError

INF = math.inf


def test_at_most_records_slack():
    check = checks.at_most("x", 1.0, 2.5)
    assert check.holds and not check.vacuous
    assert check.slack == 1.5


def test_tolerance_absorbs_rounding():
    assert checks.at_most("x", 1.0 + 1e-12, 1.0).holds
    assert not checks.at_most("x", 1.1, 1.0).holds


def test_at_least():
    assert checks.at_least("x", 2.0, 1.0).holds
    assert not checks.at_least("x", 0.0, 1.0).holds


def test_infinite_side_is_vacuous():
    check = checks.at_most("x", INF, 0.0)
    assert check.holds and check.vacuous
    assert checks.at_least("x", 0.0, INF).vacuous


def test_degenerate_side_is_vacuous():
    def undefined():
        raise DegenerateValueError("inf - inf")

    check = checks.at_most("x", undefined, 1.0)
    assert check.holds and check.vacuous


def test_within_with_infinite_side_is_vacuous():
    assert checks.within("x", -INF, 1.0, 2.0).vacuous
    assert checks.within("x", 3.0, 1.0, 2.0).holds
    assert not checks.within("x", 4.0, 1.0, 2.0).holds


def test_equal_is_exact():
    assert checks.equal("x", 1.0, 1.0).holds
    assert not checks.equal("x", 1.0, 1.0 + 1e-12).holds


def test_exactly_compares_infinities():
    check = checks.exactly("x", -INF, -INF)
    assert check.holds and not check.vacuous
    assert not checks.exactly("x", -INF, INF).holds


def test_truth():
    assert checks.truth("ok", True).holds
    assert not checks.truth("bad", False).holds

import numpy as np
import pytest

from filtered_cones.complex import (
    add_maps,
    chain_map,
    check_shift,
    commutator,
    compose,
    direct_sum,
    identity_map,
    linear_map,
    minimal_shift,
    relabel,
    require_valid,
    shift_complex,
    subcomplex_closed,
    validate_complex,
    validate_map,
    zero_map,
)
from filtered_cones.exceptions import InvalidComplexError, ShiftError
from filtered_cones.fixtures import point
from filtered_cones.models import FilteredComplex


def test_interval_is_valid(bar_1_4):
    assert validate_complex(bar_1_4).ok


def test_d_squared_violation_is_reported():
    C = FilteredComplex.build("bad", [("x", 0), ("y", 1), ("z", 2)], {"y": ["x"], "z": ["y"]})
    report = validate_complex(C)
    assert report.violations == ["d∘d ≠ 0 at z"]


def test_filtration_must_not_increase_along_d():
    C = FilteredComplex.build("bad", [("x", 2), ("y", 1)], {"y": ["x"]})
    assert validate_complex(C).violations == ["filtration(x)=2 > filtration(y)=1"]
    with pytest.raises(InvalidComplexError) as info:
        require_valid(C)
    assert info.value.violations


def test_unknown_boundary_id_is_reported():
    C = FilteredComplex.build("bad", [("x", 0)], {"x": ["ghost"]})
    assert "unknown generator 'ghost' in boundary of 'x'" in validate_complex(C).violations


def test_shift_lowers_filtrations():
    assert shift_complex(point(3), 1).filtrations.tolist() == [2.0]
    P = point(3)
    assert shift_complex(P, 0) is P


def test_direct_sum_namespaces_clashing_ids():
    S = direct_sum(point(0), point(2))
    assert S.ids == ("0/g", "1/g")
    assert direct_sum(point(0, "a"), point(2, "b")).ids == ("a", "b")


def test_relabel_requires_injective_mapping(bar_1_4):
    assert relabel(bar_1_4, {"x": "u"}).boundary_of("y") == frozenset({"u"})
    with pytest.raises(ValueError):
        relabel(bar_1_4, {"x": "y"})


def test_minimal_shift_of_points():
    assert minimal_shift(np.array([[1]]), point(1), point(0)) == 0.0
    assert minimal_shift(np.array([[1]]), point(0), point(1)) == 1.0
    assert minimal_shift(np.zeros((1, 1)), point(0), point(5)) == 0.0


def test_check_shift(p1_to_p0):
    check_shift(p1_to_p0, 0.0)
    f = chain_map(point(0), point(1), np.array([[1]]), 1.0)
    with pytest.raises(ShiftError):
        check_shift(f, 0.5)
    with pytest.raises(ShiftError):
        check_shift(f, -1.0)


def test_chain_condition_is_checked(bar_1_4):
    f = chain_map(bar_1_4, point(1), np.array([[1, 0]]), 0.0)
    assert validate_map(f).violations == ["f∘d ≠ d∘f at y"]
    assert validate_map(f, chain=False).ok


def test_declared_shift_is_checked():
    f = chain_map(point(0), point(1), np.array([[1]]), 0.5)
    report = validate_map(f)
    assert not report.ok
    assert report.minimal_shift == 1.0


def test_map_algebra_shifts(bar_1_4):
    ident = identity_map(bar_1_4)
    twice = compose(ident, ident)
    assert twice.shift == 0.0
    assert not add_maps(ident, ident).array.any()
    h = linear_map(bar_1_4, bar_1_4, np.array([[0, 0], [1, 0]]), 3.0)
    # [d, h] with h(x) = y is the identity on I(1,4)
    assert commutator(h).array.tolist() == [[1, 0], [0, 1]]
    assert validate_map(commutator(h)).ok


def test_zero_map_is_chain(bar_1_4):
    assert validate_map(zero_map(point(0), bar_1_4)).ok


def test_subcomplex_closed(bar_1_4):
    assert subcomplex_closed(bar_1_4, 1)
    assert subcomplex_closed(bar_1_4, 4)
    inverted = FilteredComplex.build("x", [("x", 2), ("y", 1)], {"y": ["x"]})
    assert not subcomplex_closed(inverted, 1)

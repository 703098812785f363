import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filtered_cones.complex import chain_map, identity_map
from filtered_cones.exceptions import DegenerateValueError, ShiftError, ValidationError
from filtered_cones.fixtures import empty, interval, point
from filtered_cones.generators import random_complex
from filtered_cones.invariants import (
    aggregate,
    bars_reading,
    ext_add,
    ext_sub,
    infinite_bar_count_matches,
    map_boundary_depth,
    profile,
    profile_oracle,
    profiles_agree,
    rank_duality_violations,
    spectral_invariant,
)
from filtered_cones.models import InvariantProfile

INF = math.inf
GRID = [x / 2 for x in range(13)]


def test_extended_arithmetic():
    assert ext_add(1, INF) == INF
    assert ext_sub(-INF, 2) == -INF
    with pytest.raises(DegenerateValueError):
        ext_add(INF, -INF)
    with pytest.raises(DegenerateValueError):
        ext_sub(INF, INF)


def test_profile_of_point():
    assert profile(point(0)) == InvariantProfile(0.0, 0.0, 0.0, 0.0)


def test_profile_of_acyclic_interval(bar_1_4):
    p = profile(bar_1_4)
    assert (p.sigma_plus, p.sigma_minus, p.rho, p.beta) == (-INF, INF, -INF, 3.0)
    assert p.is_acyclic


def test_profile_of_two_points(two_points):
    assert profile(two_points) == InvariantProfile(2.0, 0.0, 2.0, 0.0)


def test_profile_of_empty_complex():
    assert profile(empty()) == InvariantProfile(-INF, INF, -INF, 0.0)
    assert profiles_agree(profile(empty()), profile_oracle(empty()))


def test_oracle_agrees_on_fixtures(bar_1_4, two_points):
    for C in (point(0), bar_1_4, two_points):
        assert profiles_agree(profile(C), profile_oracle(C))


def test_aggregate_drops_acyclic_members(bar_1_4):
    tilde = aggregate([profile(bar_1_4), profile(point(0))])
    assert (tilde.sigma_plus_tilde, tilde.sigma_minus_tilde, tilde.rho_tilde) == (0.0, 0.0, 0.0)
    with pytest.raises(DegenerateValueError):
        aggregate([])
    assert aggregate([profile(bar_1_4)]).rho_tilde == -INF


def test_spectral_invariant_of_classes(two_points, bar_1_4):
    assert spectral_invariant(two_points, ["g2"]) == 2.0
    assert spectral_invariant(two_points, ["g0", "g2"]) == 2.0
    assert spectral_invariant(bar_1_4, ["x"]) == -INF
    with pytest.raises(ValidationError):
        spectral_invariant(bar_1_4, ["y"])


def test_bars_reading(two_points):
    assert bars_reading(two_points) == {"sigma_plus": "max-birth", "sigma_minus": "min-birth"}
    assert bars_reading(point(0))["sigma_plus"] == "degenerate"


def test_map_depth_of_killed_class():
    f = chain_map(point(0), interval(0, 2), np.array([[1], [0]]), 0.0)
    assert map_boundary_depth(f, 0.0) == 2.0
    assert map_boundary_depth(f, 1.0) == 1.0
    assert map_boundary_depth(f, 3.0) == 0.0


def test_map_depth_of_identity(bar_1_4):
    assert map_boundary_depth(identity_map(bar_1_4), 0.0) == 3.0


def test_map_depth_rejects_small_shift():
    f = chain_map(point(0), point(1), np.array([[1]]), 1.0)
    with pytest.raises(ShiftError):
        map_boundary_depth(f, 0.5)


def test_infinite_bars_match_homology(two_points, bar_1_4):
    assert infinite_bar_count_matches(two_points)
    assert infinite_bar_count_matches(bar_1_4)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_barcode_profile_matches_oracle(seed):
    C = random_complex(7, GRID, 0.5, seed)
    assert profiles_agree(profile(C), profile_oracle(C))
    assert rank_duality_violations(C) == []

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filtered_cones.exceptions import InvalidComplexError
from filtered_cones.fixtures import empty, interval, point
from filtered_cones.generators import random_complex
from filtered_cones.models import Bar, Barcode, FilteredComplex, PersistenceQuery
from filtered_cones.persistence import (
    PersistenceOracle,
    barcode,
    critical_values,
    homology_classes,
    interval_basis,
    persistence_rank,
    probe_levels,
)

GRID = [x / 2 for x in range(13)]


def test_barcode_of_point_and_interval(bar_1_4):
    assert barcode(point(0)) == Barcode.of([Bar(0.0, math.inf)])
    assert barcode(bar_1_4) == Barcode.of([Bar(1.0, 4.0)])
    assert barcode(empty()) == Barcode()


def test_zero_length_bars_are_dropped():
    assert len(barcode(interval(1, 1))) == 0


def test_barcode_rejects_invalid_complex():
    bad = FilteredComplex.build("bad", [("x", 0), ("y", 1), ("z", 2)], {"y": ["x"], "z": ["y"]})
    with pytest.raises(InvalidComplexError):
        barcode(bad)


def test_barcode_of_sum(two_points):
    assert barcode(two_points) == Barcode.of([Bar(0.0, math.inf), Bar(2.0, math.inf)])


def test_levels(bar_1_4):
    assert critical_values(bar_1_4) == (1.0, 4.0)
    assert probe_levels(bar_1_4) == (0.0, 1.0, 2.5, 4.0)
    assert probe_levels(empty()) == ()


def test_persistence_rank_on_interval(bar_1_4):
    assert persistence_rank(bar_1_4, PersistenceQuery(1, 3)) == 1
    assert persistence_rank(bar_1_4, PersistenceQuery(1, 4)) == 0
    assert persistence_rank(bar_1_4, PersistenceQuery(0.5)) == 0
    assert persistence_rank(empty(), PersistenceQuery(0)) == 0


def test_query_requires_ordered_levels():
    with pytest.raises(ValueError):
        PersistenceQuery(2, 1)


def test_homology_classes(two_points, bar_1_4):
    assert homology_classes(bar_1_4) == []
    assert sorted(sorted(c) for c in homology_classes(two_points)) == [["g0"], ["g2"]]


def test_oracle_homology_dimension(two_points):
    assert PersistenceOracle(two_points).homology_dimension() == 2


def test_interval_basis_kinds(bar_1_4):
    basis = interval_basis(bar_1_4)
    assert sorted(basis.kind) == ["boundary", "chain"]
    assert basis.cycle_columns() == [basis.kind.index("boundary")]


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_bar_counts_match_ranks(seed):
    C = random_complex(6, GRID, 0.5, seed)
    bars = barcode(C)
    oracle = PersistenceOracle(C)
    levels = critical_values(C)
    for i, alpha in enumerate(levels):
        for beta in list(levels[i:]) + [math.inf]:
            assert bars.alive(alpha, beta) == oracle.rank(alpha, beta)

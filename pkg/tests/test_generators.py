import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filtered_cones.complex import validate_complex, validate_map, validate_witness, witness_weight
from filtered_cones.cones import iterated_cone
from filtered_cones.fixtures import interval, point
from filtered_cones.generators import (
    grid_up_to,
    make_rng,
    random_change_of_basis,
    random_complex,
    random_filtered_map,
    random_homotopy_equivalence,
    random_iterated_cone_spec,
)
from filtered_cones.persistence import barcode

GRID = [x / 2 for x in range(13)]
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_grid_up_to():
    assert grid_up_to(1.0) == [0.0, 0.5, 1.0]
    assert grid_up_to(0.0) == [0.0]
    assert grid_up_to(-1.0) == []


def test_make_rng_passes_generators_through():
    rng = np.random.default_rng(3)
    assert make_rng(rng) is rng


def test_random_complex_is_reproducible():
    first = random_complex(6, GRID, 0.5, 42)
    second = random_complex(6, GRID, 0.5, 42)
    assert first.same_structure(second)


def test_random_complex_edge_cases():
    assert random_complex(0, GRID, 0.5, 1).is_empty()
    with pytest.raises(ValueError):
        random_complex(-1, GRID, 0.5, 1)
    with pytest.raises(ValueError):
        random_complex(3, [], 0.5, 1)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_random_complex_is_valid(seed):
    C = random_complex(8, GRID, 0.6, seed)
    assert validate_complex(C).ok
    assert C.ids == tuple(f"c{i}" for i in range(8))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_change_of_basis_keeps_barcode(seed):
    C = random_complex(6, GRID, 0.6, seed)
    C_prime, T, T_inv = random_change_of_basis(C, 0.5, seed)
    assert validate_complex(C_prime).ok
    assert barcode(C_prime) == barcode(C)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([0.0, 0.5, 1.0, 2.0]))
def test_random_filtered_map_is_valid(seed, shift):
    rng = make_rng(seed)
    A = random_complex(4, GRID, 0.5, rng)
    B = random_complex(4, GRID, 0.5, rng)
    f = random_filtered_map(A, B, shift, rng)
    assert validate_map(f).ok
    assert f.shift == shift


def test_random_filtered_map_rejects_negative_shift():
    with pytest.raises(ValueError):
        random_filtered_map(point(0), point(0), -1.0, 0)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=2), st.booleans())
def test_random_homotopy_equivalence_is_a_witness(seed, pads, perturb):
    C = random_complex(4, GRID, 0.5, seed)
    w = random_homotopy_equivalence(C, pads, 1.0, seed, perturb=perturb)
    assert validate_witness(w).ok
    assert witness_weight(w) <= w.shift
    assert w.C_prime.size == C.size + 2 * pads


def test_identity_equivalence_without_budget(bar_1_4):
    w = random_homotopy_equivalence(bar_1_4, 0, 0.0, 0)
    assert w.shift == 0.0
    assert w.C_prime is bar_1_4


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_random_iterated_spec_builds(seed):
    rng = make_rng(seed)
    attachments = [random_complex(3, GRID, 0.5, rng, name=f"A{i}") for i in range(3)]
    spec = random_iterated_cone_spec(attachments, [0.5, 1.0], rng)
    C_r, partials = iterated_cone(spec)
    assert len(partials) == 3
    assert C_r.size == 9
    assert all(validate_complex(P).ok for P in partials)


def test_random_iterated_spec_needs_matching_shifts():
    with pytest.raises(ValueError):
        random_iterated_cone_spec([point(0), interval(0, 1)], [], 0)

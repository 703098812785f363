import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filtered_cones import gf2


def test_rank_counts_independent_rows():
    assert gf2.rank(np.array([[1, 1], [1, 1]])) == 1
    assert gf2.rank(np.array([[1, 0], [0, 1]])) == 2
    assert gf2.rank(np.zeros((0, 3), dtype=np.uint8)) == 0


def test_rank_reduces_mod_two():
    # 2 ≡ 0, so the second row vanishes
    assert gf2.rank(np.array([[1, 1], [2, 2]])) == 1


def test_nullspace_of_all_ones_row():
    basis = gf2.nullspace(np.array([[1, 1]]))
    assert basis.tolist() == [[1, 1]]


def test_nullspace_without_rows_is_everything():
    assert gf2.nullspace(np.zeros((0, 3), dtype=np.uint8)).tolist() == np.eye(3, dtype=int).tolist()


def test_inverse_of_unitriangular():
    T = np.array([[1, 1], [0, 1]])
    assert gf2.matmul(T, gf2.inverse(T)).tolist() == [[1, 0], [0, 1]]


def test_inverse_rejects_singular():
    with pytest.raises(ValueError, match="singular"):
        gf2.inverse(np.array([[1, 1], [1, 1]]))


def test_solve_consistent_and_inconsistent():
    A = np.array([[1, 1], [0, 1]])
    x = gf2.solve(A, np.array([0, 1]))
    assert gf2.matmul(A, x[:, None])[:, 0].tolist() == [0, 1]
    assert gf2.solve(np.array([[1, 1], [1, 1]]), np.array([0, 1])) is None


def test_intersection_of_lines():
    first = np.array([[1, 0, 0], [0, 1, 0]])
    second = np.array([[1, 1, 0], [0, 0, 1]])
    meet = gf2.intersection(first, second)
    assert meet.shape[0] == 1
    assert gf2.contains(meet, np.array([1, 1, 0]))


def test_contains_against_empty_basis():
    empty = np.zeros((0, 2), dtype=np.uint8)
    assert gf2.contains(empty, np.array([0, 0]))
    assert not gf2.contains(empty, np.array([1, 0]))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_rank_nullity(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 7, size=2)
    A = (rng.random((m, n)) < 0.5).astype(np.uint8)
    N = gf2.nullspace(A)
    assert gf2.rank(A) + N.shape[0] == n
    if N.shape[0]:
        assert not gf2.matmul(A, N.T).any()

"""
Linear algebra over the two-element field.

Matrices are numpy ``uint8`` arrays holding 0/1 entries. Subspaces are
given by the row space of a matrix (one spanning vector per row), so a
basis of a k-dimensional subspace of F2^n is a ``(k, n)`` array.
"""

from typing import List, Optional, Tuple

import numpy as np


def as_gf2(matrix) -> np.ndarray:
    """Return a fresh ``uint8`` copy of ``matrix`` reduced mod 2."""
    return (np.asarray(matrix, dtype=np.int64) & 1).astype(np.uint8)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def matmul(*matrices: np.ndarray) -> np.ndarray:
    """Product of one or more matrices over F2."""
    result = np.asarray(matrices[0], dtype=np.int64)
    for matrix in matrices[1:]:
        result = (result @ np.asarray(matrix, dtype=np.int64)) & 1
    return (result & 1).astype(np.uint8)


def rref(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form over F2.

    Returns:
        The reduced matrix and the list of pivot columns.
    """
    reduced = as_gf2(matrix)
    if reduced.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {reduced.shape}")
    rows, cols = reduced.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        candidates = np.flatnonzero(reduced[r:, c])
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            reduced[[r, p], :] = reduced[[p, r], :]
        ones = np.flatnonzero(reduced[:, c])
        ones = ones[ones != r]
        if ones.size:
            reduced[ones, :] ^= reduced[r, :]
        pivots.append(c)
        r += 1
    return reduced, pivots


def rank(matrix: np.ndarray) -> int:
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0
    return len(rref(matrix)[1])


def row_basis(matrix: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the row space of ``matrix``."""
    matrix = np.asarray(matrix)
    if matrix.shape[0] == 0:
        return zeros(0, matrix.shape[1])
    reduced, pivots = rref(matrix)
    return reduced[: len(pivots)].copy()


def nullspace(matrix: np.ndarray) -> np.ndarray:
    """
    Basis (as rows) of ``{x : matrix @ x = 0}``.

    A ``(m, n)`` matrix yields a ``(n - rank, n)`` array.
    """
    matrix = np.asarray(matrix)
    n = matrix.shape[1]
    if matrix.shape[0] == 0:
        return identity(n)
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = zeros(len(free), n)
    for t, c in enumerate(free):
        basis[t, c] = 1
        for row, p in enumerate(pivots):
            if reduced[row, c]:
                basis[t, p] = 1
    return basis


def column_space(matrix: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the column space of ``matrix``."""
    return row_basis(np.asarray(matrix).T)


def contains(basis: np.ndarray, vectors: np.ndarray) -> bool:
    """True when every row of ``vectors`` lies in the row space of ``basis``."""
    vectors = np.atleast_2d(np.asarray(vectors))
    if vectors.shape[0] == 0:
        return True
    basis = np.asarray(basis)
    if basis.shape[0] == 0:
        return not np.any(vectors & 1)
    return rank(np.vstack([basis, vectors])) == rank(basis)


def span_sum(*bases: np.ndarray) -> np.ndarray:
    """Basis of the sum of row spaces."""
    stacked = np.vstack([np.asarray(b) for b in bases])
    return row_basis(stacked)


def intersection(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the intersection of two row spaces."""
    first = np.asarray(first)
    second = np.asarray(second)
    n = first.shape[1]
    if first.shape[0] == 0 or second.shape[0] == 0:
        return zeros(0, n)
    stacked = np.vstack([first, second])
    relations = nullspace(stacked.T)
    if relations.shape[0] == 0:
        return zeros(0, n)
    vectors = matmul(relations[:, : first.shape[0]], first)
    return row_basis(vectors)


def solve(matrix: np.ndarray, rhs: np.ndarray) -> Optional[np.ndarray]:
    """
    One solution ``x`` of ``matrix @ x = rhs`` over F2, or None.

    Free variables are set to zero, so the returned solution is the one
    supported on pivot columns.
    """
    matrix = as_gf2(matrix)
    rhs = as_gf2(rhs).reshape(-1)
    rows, cols = matrix.shape
    if rows == 0:
        return zeros(1, cols)[0]
    augmented = np.concatenate([matrix, rhs[:, None]], axis=1)
    reduced, pivots = rref(augmented)
    if cols in pivots:
        return None
    solution = zeros(1, cols)[0]
    for row, p in enumerate(pivots):
        solution[p] = reduced[row, cols]
    return solution


def inverse(matrix: np.ndarray) -> np.ndarray:
    """Inverse of a square invertible matrix over F2."""
    matrix = as_gf2(matrix)
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValueError(f"cannot invert non-square matrix {matrix.shape}")
    reduced, pivots = rref(np.concatenate([matrix, identity(n)], axis=1))
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular over F2")
    return reduced[:, n:].copy()

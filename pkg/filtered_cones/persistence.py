"""
Barcodes by column reduction, and an independent rank oracle.

The reduction path (``barcode``, ``homology_classes``, ``interval_basis``)
and the rank path (``PersistenceOracle``, ``persistence_rank``) share no
code beyond the GF(2) kernel, so each can be used to check the other.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from . import gf2
from .complex import require_valid
from .models import Bar, Barcode, FilteredComplex, PersistenceQuery

logger = logging.getLogger(__name__)


def critical_values(C: FilteredComplex) -> Tuple[float, ...]:
    """Sorted distinct filtration values of C."""
    return tuple(sorted(set(float(a) for a in C.filtrations)))


def probe_levels(C: FilteredComplex) -> Tuple[float, ...]:
    """Critical values, midpoints between consecutive ones and one level below the minimum."""
    values = critical_values(C)
    if not values:
        return ()
    levels = {values[0] - 1.0, *values}
    levels.update((a + b) / 2 for a, b in zip(values, values[1:]))
    return tuple(sorted(levels))


@dataclass(frozen=True)
class _Reduction:
    order: np.ndarray          # permuted position -> declared index
    reduced: np.ndarray        # R = D V in permuted coordinates
    transform: np.ndarray      # V, upper unitriangular
    pairs: Tuple[Tuple[int, int], ...]   # (low, column) in permuted coordinates
    essential: Tuple[int, ...]


def _reduce(C: FilteredComplex) -> _Reduction:
    n = C.size
    order = np.array(sorted(range(n), key=lambda i: (C.generators[i].filtration, i)), dtype=int)
    R = np.array(C.boundary_matrix[np.ix_(order, order)], dtype=np.uint8)
    V = gf2.identity(n)
    low_owner: Dict[int, int] = {}
    pairs: List[Tuple[int, int]] = []

    for j in range(n):
        while True:
            nonzero = np.flatnonzero(R[:, j])
            if nonzero.size == 0:
                break
            low = int(nonzero[-1])
            k = low_owner.get(low)
            if k is None:
                low_owner[low] = j
                pairs.append((low, j))
                break
            R[:, j] ^= R[:, k]
            V[:, j] ^= V[:, k]

    paired = set(low_owner) | set(low_owner.values())
    essential = tuple(j for j in range(n) if j not in paired)
    return _Reduction(order, R, V, tuple(pairs), essential)


def barcode(C: FilteredComplex) -> Barcode:
    """Barcode of H^{≤•}(C); zero-length bars are dropped."""
    require_valid(C)
    red = _reduce(C)
    filt = C.filtrations[red.order]
    bars = [
        Bar(float(filt[low]), float(filt[col]))
        for low, col in red.pairs
        if filt[low] < filt[col]
    ]
    bars.extend(Bar(float(filt[j]), math.inf) for j in red.essential)
    logger.debug("barcode of %s: %d bars", C.name, len(bars))
    return Barcode.of(bars)


def homology_classes(C: FilteredComplex) -> List[frozenset]:
    """Representing cycles of a basis of H(C), one per infinite bar."""
    require_valid(C)
    red = _reduce(C)
    classes = []
    for j in red.essential:
        rows = red.order[np.flatnonzero(red.transform[:, j])]
        classes.append(frozenset(C.ids[i] for i in rows))
    return classes


@dataclass(frozen=True)
class IntervalBasis:
    """
    A basis of C adapted to its barcode, in declared coordinates.

    Column k of ``vectors`` is a basis vector; ``filtrations[k]`` is its
    filtration level. ``kind[k]`` is ``"boundary"`` (d of a chain vector),
    ``"chain"`` or ``"essential"`` (a cycle carrying an infinite bar).
    ``partner[k]`` links a chain vector and its boundary, -1 otherwise.
    The matrix is invertible and its inverse is filtration-preserving.
    """
    vectors: np.ndarray
    filtrations: np.ndarray
    kind: Tuple[str, ...]
    partner: Tuple[int, ...]

    def cycle_columns(self) -> List[int]:
        return [k for k, kind in enumerate(self.kind) if kind != "chain"]


def interval_basis(C: FilteredComplex) -> IntervalBasis:
    require_valid(C)
    n = C.size
    red = _reduce(C)
    filt = C.filtrations[red.order]
    columns = np.zeros((n, n), dtype=np.uint8)
    kind = [""] * n
    partner = [-1] * n
    for low, col in red.pairs:
        columns[:, low] = red.reduced[:, col]
        columns[:, col] = red.transform[:, col]
        kind[low], kind[col] = "boundary", "chain"
        partner[low], partner[col] = col, low
    for j in red.essential:
        columns[:, j] = red.transform[:, j]
        kind[j] = "essential"

    vectors = np.zeros((n, n), dtype=np.uint8)
    vectors[red.order, :] = columns
    return IntervalBasis(vectors, filt.astype(float), tuple(kind), tuple(partner))


class PersistenceOracle:
    """
    Ranks of the maps i^{β,α} computed from cycle and boundary spaces.

    Spaces are cached per level, so one oracle answers many queries on the
    same complex.
    """

    def __init__(self, C: FilteredComplex):
        self.C = require_valid(C)
        self._D = C.boundary_matrix
        self._top = float(C.filtrations.max()) if C.size else 0.0
        self.cycles = lru_cache(maxsize=None)(self._cycles)
        self.boundaries = lru_cache(maxsize=None)(self._boundaries)

    def _level(self, alpha: float) -> np.ndarray:
        return np.flatnonzero(self.C.filtrations <= alpha)

    def _cycles(self, alpha: float) -> np.ndarray:
        """Basis (rows, full coordinates) of the cycles of C^{≤α}."""
        n = self.C.size
        cols = self._level(alpha)
        if cols.size == 0:
            return gf2.zeros(0, n)
        kernel = gf2.nullspace(self._D[:, cols])
        full = gf2.zeros(kernel.shape[0], n)
        full[:, cols] = kernel
        return full

    def _boundaries(self, beta: float) -> np.ndarray:
        """Basis (rows) of the boundaries of C^{≤β}; β = +inf means all of C."""
        n = self.C.size
        cols = np.arange(n) if math.isinf(beta) else self._level(beta)
        if cols.size == 0:
            return gf2.zeros(0, n)
        return gf2.column_space(self._D[:, cols])

    def rank(self, alpha: float, beta: float = math.inf) -> int:
        """rank i^{β,α} = dim Z_α − dim(Z_α ∩ B_β)."""
        if alpha > beta:
            raise ValueError(f"rank needs alpha <= beta, got {alpha} > {beta}")
        Z = self.cycles(alpha)
        if Z.shape[0] == 0:
            return 0
        B = self.boundaries(beta)
        return gf2.rank(np.vstack([Z, B])) - B.shape[0]

    def homology_dimension(self) -> int:
        if self.C.is_empty():
            return 0
        return self.rank(self._top)

    def in_image(self, vector: np.ndarray, alpha: float) -> bool:
        """True when the class of the cycle ``vector`` lies in the image of i^α."""
        return gf2.contains(gf2.span_sum(self.cycles(alpha), self.boundaries(math.inf)), vector)


def persistence_rank(C: FilteredComplex, q: PersistenceQuery) -> int:
    """Rank over F2 of i^{q.beta, q.alpha}, computed without the barcode."""
    if C.is_empty():
        return 0
    return PersistenceOracle(C).rank(q.alpha, q.beta)

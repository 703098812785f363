"""
Seeded random instances: complexes, filtered chain maps, homotopy
equivalences and iterated-cone specs.

Every generator is a pure function of its arguments; randomness comes from
``numpy.random.default_rng(seed)``.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .complex import (
    chain_map,
    commutator,
    direct_sum,
    identity_map,
    linear_map,
    minimal_shift,
    raise_filtration,
    require_valid,
    zero_map,
)
from .cones import mapping_cone
from .fixtures import interval
from .models import (
    ConeInput,
    FilteredComplex,
    FilteredLinearMap,
    FilteredMap,
    HomotopyEquivalenceWitness,
    IteratedConeSpec,
)
from .persistence import interval_basis

logger = logging.getLogger(__name__)

DEFAULT_GRID = tuple(np.arange(0, 6.5, 0.5).tolist())


def make_rng(seed) -> np.random.Generator:
    """Accepts an int seed, a SeedSequence or an existing Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def grid_up_to(bound: float, step: float = 0.5) -> List[float]:
    """Multiples of ``step`` in [0, bound]."""
    if bound < 0:
        return []
    return np.arange(0, bound + step / 2, step).tolist() if bound >= step else [0.0]


def _sorted_positions(C: FilteredComplex) -> np.ndarray:
    """pos[i] = rank of generator i in the (filtration, index) order."""
    order = sorted(range(C.size), key=lambda i: (C.generators[i].filtration, i))
    positions = np.empty(C.size, dtype=int)
    positions[order] = np.arange(C.size)
    return positions


def random_unitriangular(C: FilteredComplex, density: float, rng: np.random.Generator) -> np.ndarray:
    """A filtration-preserving automorphism of C, unitriangular in sorted order."""
    n = C.size
    pos = _sorted_positions(C)
    allowed = pos[:, None] < pos[None, :]
    T = (rng.random((n, n)) < density) & allowed
    return (T | np.eye(n, dtype=bool)).astype(np.uint8)


def random_filtered_linear(
    source: FilteredComplex,
    target: FilteredComplex,
    shift: float,
    density: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Random ``(target, source)`` array whose entries raise filtration by at most ``shift``."""
    allowed = target.filtrations[:, None] <= source.filtrations[None, :] + shift
    return ((rng.random((target.size, source.size)) < density) & allowed).astype(np.uint8)


def random_complex(
    gen_count: int,
    filtration_grid: Sequence[float],
    density: float,
    seed,
    name: Optional[str] = None,
) -> FilteredComplex:
    """
    A valid random complex: a random filtration-respecting pairing conjugated
    by a random filtered change of basis, so d∘d = 0 holds by construction.
    """
    if gen_count < 0:
        raise ValueError(f"gen_count must be >= 0, got {gen_count}")
    rng = make_rng(seed)
    name = name or f"random[{gen_count}]"
    if gen_count == 0:
        return FilteredComplex.build(name, [])
    if not len(filtration_grid):
        raise ValueError("filtration_grid is empty")

    values = np.sort(rng.choice(np.asarray(filtration_grid, dtype=float), size=gen_count))
    ids = [f"c{i}" for i in range(gen_count)]

    pairing = gf2.zeros(gen_count, gen_count)
    free = []
    for j in range(gen_count):
        if free and rng.random() < density:
            i = free.pop(int(rng.integers(len(free))))
            pairing[i, j] = 1
        else:
            free.append(j)

    bare = FilteredComplex.from_matrix(name, ids, values.tolist(), pairing)
    T = random_unitriangular(bare, density, rng)
    D = gf2.matmul(T, pairing, gf2.inverse(T))
    return FilteredComplex.from_matrix(name, ids, values.tolist(), D)


def random_change_of_basis(
    C: FilteredComplex, density: float, seed
) -> Tuple[FilteredComplex, np.ndarray, np.ndarray]:
    """C with d conjugated by a random filtration-preserving automorphism T; returns (C′, T, T⁻¹)."""
    rng = make_rng(seed)
    T = random_unitriangular(C, density, rng)
    T_inv = gf2.inverse(T)
    D = gf2.matmul(T, C.boundary_matrix, T_inv)
    return FilteredComplex.from_matrix(C.name, list(C.ids), C.filtrations.tolist(), D), T, T_inv


def _random_strict_part(
    A: FilteredComplex, B: FilteredComplex, shift: float, density: float, rng: np.random.Generator
) -> np.ndarray:
    """A chain map A → B defined on a barcode-adapted basis of A."""
    basis_a = interval_basis(A)
    basis_b = interval_basis(B)
    cycle_cols = np.array(basis_b.cycle_columns(), dtype=int)
    image = gf2.zeros(B.size, A.size)

    def random_cycle(limit: float) -> np.ndarray:
        if cycle_cols.size == 0:
            return gf2.zeros(B.size, 1)[:, 0]
        usable = cycle_cols[basis_b.filtrations[cycle_cols] <= limit]
        chosen = usable[rng.random(usable.size) < density]
        return (basis_b.vectors[:, chosen].sum(axis=1) & 1).astype(np.uint8)

    def random_chain(limit: float) -> np.ndarray:
        allowed = B.filtrations <= limit
        return ((rng.random(B.size) < density) & allowed).astype(np.uint8)

    for k, kind in enumerate(basis_a.kind):
        if kind == "essential":
            image[:, k] = random_cycle(basis_a.filtrations[k] + shift)
        elif kind == "chain":
            low = basis_a.partner[k]
            b = random_chain(basis_a.filtrations[low] + shift)
            image[:, k] = b
            image[:, low] = gf2.matmul(B.boundary_matrix, b[:, None])[:, 0]
    return gf2.matmul(image, gf2.inverse(basis_a.vectors))


def random_filtered_map(
    A: FilteredComplex,
    B: FilteredComplex,
    shift: float,
    seed,
    density: float = 0.3,
    strict: bool = True,
) -> FilteredMap:
    """
    A random shift-filtered chain map A → B: dλ + λd for a random filtered
    λ, plus (when ``strict``) a chain map sampled on an interval basis.
    """
    if shift < 0:
        raise ValueError(f"shift must be non-negative, got {shift}")
    require_valid(A)
    require_valid(B)
    if A.is_empty() or B.is_empty():
        return zero_map(A, B, shift)
    rng = make_rng(seed)
    lam = random_filtered_linear(A, B, shift, density, rng)
    array = gf2.matmul(B.boundary_matrix, lam) ^ gf2.matmul(lam, A.boundary_matrix)
    if strict:
        array ^= _random_strict_part(A, B, shift, density, rng)
    return chain_map(A, B, array, shift)


def random_homotopy_equivalence(
    C: FilteredComplex,
    pad_pairs: int,
    shift_budget: float,
    seed,
    perturb: bool = True,
    density: float = 0.3,
) -> HomotopyEquivalenceWitness:
    """
    A homotopy equivalence C ≃ C′ where C′ is C raised by an offset ε,
    plus ``pad_pairs`` acyclic intervals, conjugated by a filtered change of
    basis.

    f = Tι + [d, λ], g = πT⁻¹, h = gλ, h′ = T h_P T⁻¹ + λg where h_P sends
    each pad's lower generator to its upper one. Without ``perturb``,
    λ = 0 and g∘f = id exactly. A zero budget with no padding returns the
    identity equivalence.
    """
    if shift_budget < 0:
        raise ValueError(f"shift_budget must be non-negative, got {shift_budget}")
    require_valid(C)
    if pad_pairs == 0 and shift_budget == 0:
        ident = identity_map(C)
        zero = linear_map(C, C, gf2.zeros(C.size, C.size), 0.0)
        return HomotopyEquivalenceWitness(C, C, ident, ident, zero, zero, 0.0)

    rng = make_rng(seed)
    steps = grid_up_to(shift_budget)
    offset = float(rng.choice(steps))
    base_levels = C.filtrations if C.size else np.array([0.0])

    padded = raise_filtration(C, offset, name=f"{C.name}′")
    for p in range(pad_pairs):
        b = float(rng.choice(base_levels)) + float(rng.choice(steps))
        delta = float(rng.choice(steps))
        padded = direct_sum(padded, interval(b, b + delta, f"~pad{p}.x", f"~pad{p}.y"), name=padded.name)

    n, m = C.size, padded.size
    T = random_unitriangular(padded, density, rng)
    T_inv = gf2.inverse(T)
    D_prime = gf2.matmul(T, padded.boundary_matrix, T_inv)
    C_prime = FilteredComplex.from_matrix(padded.name, list(padded.ids), padded.filtrations.tolist(), D_prime)

    include = gf2.zeros(m, n)
    include[:n, :n] = gf2.identity(n)
    h_pad = gf2.zeros(m, m)
    for p in range(pad_pairs):
        x, y = padded.index[f"~pad{p}.x"], padded.index[f"~pad{p}.y"]
        h_pad[y, x] = 1

    f_array = gf2.matmul(T, include)
    g_array = gf2.matmul(include.T, T_inv)
    h_array = gf2.zeros(n, n)
    h_prime_array = gf2.matmul(T, h_pad, T_inv)

    if perturb:
        lam_shift = float(rng.choice(steps))
        lam = random_filtered_linear(C, C_prime, lam_shift, density, rng)
        lam_map = linear_map(C, C_prime, lam, lam_shift)
        f_array = f_array ^ commutator(lam_map).array
        h_array = gf2.matmul(g_array, lam)
        h_prime_array = h_prime_array ^ gf2.matmul(lam, g_array)

    measured = max(
        minimal_shift(f_array, C, C_prime),
        minimal_shift(g_array, C_prime, C),
        minimal_shift(h_array, C, C),
        minimal_shift(h_prime_array, C_prime, C_prime),
    )
    logger.debug("homotopy equivalence %s ≃ %s with shift %s", C.name, C_prime.name, measured)
    return HomotopyEquivalenceWitness(
        C=C,
        C_prime=C_prime,
        f=chain_map(C, C_prime, f_array, measured),
        g=chain_map(C_prime, C, g_array, measured),
        h=linear_map(C, C, h_array, measured),
        h_prime=linear_map(C_prime, C_prime, h_prime_array, measured),
        shift=measured,
    )


def random_iterated_cone_spec(
    attachments: Sequence[FilteredComplex],
    shifts: Sequence[float],
    seed,
    density: float = 0.3,
) -> IteratedConeSpec:
    """Maps φ_i: A_i → C_{i−1} sampled against the partial cones actually built."""
    if len(shifts) != len(attachments) - 1:
        raise ValueError("need one shift per attachment after the first")
    rng = make_rng(seed)
    partial = attachments[0]
    maps: List[FilteredMap] = []
    for stage, (A, s) in enumerate(zip(attachments[1:], shifts), start=1):
        phi = random_filtered_map(A, partial, s, rng, density=density)
        maps.append(phi)
        partial = mapping_cone(ConeInput(phi, s), prefix=f"A{stage}/", name=f"C{stage}")
    return IteratedConeSpec(tuple(attachments), tuple(maps), tuple(float(s) for s in shifts))


def random_linear_map(
    source: FilteredComplex, target: FilteredComplex, shift: float, seed, density: float = 0.3
) -> FilteredLinearMap:
    rng = make_rng(seed)
    return linear_map(source, target, random_filtered_linear(source, target, shift, density, rng), shift)

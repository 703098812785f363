"""
Cone functoriality for homotopy-commutative squares.

Given a square A′ → B′ over A″ → B″ whose vertical maps are homotopy
equivalences, builds the induced maps between the two cones, a homotopy
inverse pair of cone maps and the homotopies between their composites, and
measures the shift of every piece.
"""

import logging
from typing import Dict, List, Optional

import numpy as np

from . import gf2
from .complex import (
    add_maps,
    commutator,
    compose,
    fmt,
    linear_map,
    chain_map,
    identity_map,
    minimal_shift,
    validate_map,
)
from .cones import mapping_cone
from .exceptions import ConeEquivalenceError
from .generators import make_rng, random_complex, random_filtered_map, random_homotopy_equivalence
from .models import (
    ConeEquivalenceInput,
    ConeEquivalenceResult,
    ConeInput,
    FilteredComplex,
    FilteredLinearMap,
)

logger = logging.getLogger(__name__)

CANDIDATE_CONSTANT = 3.0


def _identity_violation(left: np.ndarray, h: FilteredLinearMap) -> bool:
    return not np.array_equal(gf2.as_gf2(left), commutator(h).array)


def validate_square(square: ConeEquivalenceInput) -> None:
    """Raise ConeEquivalenceError naming the first input identity that fails."""
    chain_maps = {
        "f′": square.f_prime, "f″": square.f_second,
        "ψ′": square.psi_prime, "ψ″": square.psi_second,
        "φ′": square.phi_prime, "φ″": square.phi_second,
    }
    homotopies = {
        "h′": square.h_prime, "k′": square.k_prime, "k″": square.k_second,
        "r′": square.r_prime, "r″": square.r_second,
    }
    for name, m in {**chain_maps, **homotopies}.items():
        report = validate_map(m, chain=name in chain_maps)
        if not report.ok:
            raise ConeEquivalenceError(f"{name} is invalid: {'; '.join(report.violations)}", name)

    sq = square
    eye_a1 = gf2.identity(sq.psi_prime.source.size)
    eye_a2 = gf2.identity(sq.psi_prime.target.size)
    eye_b1 = gf2.identity(sq.phi_prime.source.size)
    eye_b2 = gf2.identity(sq.phi_prime.target.size)
    identities = [
        ("φ′f′ − f″ψ′ = dh′ + h′d",
         gf2.matmul(sq.phi_prime.array, sq.f_prime.array) ^ gf2.matmul(sq.f_second.array, sq.psi_prime.array),
         sq.h_prime),
        ("ψ″ψ′ − id = dk′ + k′d", gf2.matmul(sq.psi_second.array, sq.psi_prime.array) ^ eye_a1, sq.k_prime),
        ("ψ′ψ″ − id = dk″ + k″d", gf2.matmul(sq.psi_prime.array, sq.psi_second.array) ^ eye_a2, sq.k_second),
        ("φ″φ′ − id = dr′ + r′d", gf2.matmul(sq.phi_second.array, sq.phi_prime.array) ^ eye_b1, sq.r_prime),
        ("φ′φ″ − id = dr″ + r″d", gf2.matmul(sq.phi_prime.array, sq.phi_second.array) ^ eye_b2, sq.r_second),
    ]
    for name, left, h in identities:
        if _identity_violation(left, h):
            raise ConeEquivalenceError(f"input identity fails: {name}", name)

    needed = max(m.shift for m in (sq.f_prime, sq.phi_prime, sq.psi_prime, sq.f_second))
    if sq.h_prime.shift < needed:
        raise ConeEquivalenceError(
            f"shift of h′ ({fmt(sq.h_prime.shift)}) is below {fmt(needed)}", "s_h′"
        )


def solve_homotopy(target: np.ndarray, source: FilteredComplex, goal: FilteredComplex, name: str) -> np.ndarray:
    """
    Some X: source → goal with dX + Xd = target, of the smallest shift
    among the candidate filtration gaps.
    """
    target = gf2.as_gf2(target)
    if not target.any():
        return gf2.zeros(goal.size, source.size)
    m, n = goal.size, source.size
    operator = (np.kron(goal.boundary_matrix, gf2.identity(n)) + np.kron(gf2.identity(m), source.boundary_matrix.T)) & 1
    rhs = target.reshape(-1)
    gaps = goal.filtrations[:, None] - source.filtrations[None, :]
    for level in sorted(set(np.maximum(gaps, 0).reshape(-1).tolist())):
        allowed = np.flatnonzero((gaps <= level).reshape(-1))
        solution = gf2.solve(operator[:, allowed], rhs)
        if solution is not None:
            X = gf2.zeros(1, m * n)[0]
            X[allowed] = solution
            return X.reshape(m, n)
    raise ConeEquivalenceError(f"no homotopy solves the correction equation for {name}", name)


def _blocks(top_left: np.ndarray, bottom_left: np.ndarray, bottom_right: np.ndarray) -> np.ndarray:
    top_right = gf2.zeros(top_left.shape[0], bottom_right.shape[1])
    return np.block([[top_left, top_right], [bottom_left, bottom_right]]).astype(np.uint8)


def cone_equivalence(square: ConeEquivalenceInput) -> ConeEquivalenceResult:
    """
    Cone maps Φ′(a, b) = (ψ′a, φ′b + h′a) and Φ″(a, b) = (ψ″a, φ″b + h″a)
    with h″ = φ″f″k″ + φ″h′ψ″ + r′f′ψ″, and homotopies
    H′ = (k′, r′ + X′), H″ = (k″, r″ + X″) where X′, X″ solve the
    correction equations. Every identity is verified over F2.
    """
    validate_square(square)
    sq = square
    cone1 = mapping_cone(ConeInput(sq.f_prime, sq.f_prime.shift), name="Cone(f′)")
    cone2 = mapping_cone(ConeInput(sq.f_second, sq.f_second.shift), name="Cone(f″)")

    h_second = add_maps(
        add_maps(
            compose(sq.phi_second, compose(sq.f_second, sq.k_second)),
            compose(sq.phi_second, compose(sq.h_prime, sq.psi_second)),
        ),
        compose(sq.r_prime, compose(sq.f_prime, sq.psi_second)),
    )
    h_second = linear_map(h_second.source, h_second.target, h_second.array)

    phi1 = chain_map(cone1, cone2, _blocks(sq.psi_prime.array, sq.h_prime.array, sq.phi_prime.array))
    phi2 = chain_map(cone2, cone1, _blocks(sq.psi_second.array, h_second.array, sq.phi_second.array))

    Y1 = (
        gf2.matmul(sq.phi_second.array, sq.h_prime.array)
        ^ gf2.matmul(h_second.array, sq.psi_prime.array)
        ^ gf2.matmul(sq.f_prime.array, sq.k_prime.array)
        ^ gf2.matmul(sq.r_prime.array, sq.f_prime.array)
    )
    Y2 = (
        gf2.matmul(sq.phi_prime.array, h_second.array)
        ^ gf2.matmul(sq.h_prime.array, sq.psi_second.array)
        ^ gf2.matmul(sq.f_second.array, sq.k_second.array)
        ^ gf2.matmul(sq.r_second.array, sq.f_second.array)
    )
    X1 = solve_homotopy(Y1, sq.f_prime.source, sq.f_prime.target, "X′")
    X2 = solve_homotopy(Y2, sq.f_second.source, sq.f_second.target, "X″")
    H1 = linear_map(cone1, cone1, _blocks(sq.k_prime.array, X1, sq.r_prime.array))
    H2 = linear_map(cone2, cone2, _blocks(sq.k_second.array, X2, sq.r_second.array))

    _verify(sq, cone1, cone2, phi1, phi2, H1, H2, h_second)

    measured = {
        "varphi′": minimal_shift(phi1.array, cone1, cone2),
        "varphi″": minimal_shift(phi2.array, cone2, cone1),
        "H′": minimal_shift(H1.array, cone1, cone1),
        "H″": minimal_shift(H2.array, cone2, cone2),
        "h″": minimal_shift(h_second.array, h_second.source, h_second.target),
    }
    logger.debug("cone equivalence shifts %s", measured)
    return ConeEquivalenceResult(
        cone_prime=cone1,
        cone_second=cone2,
        varphi_prime=phi1,
        varphi_second=phi2,
        H_prime=H1,
        H_second=H2,
        h_second=h_second,
        measured_shifts=measured,
        input_shift_sum=sq.input_shift_sum,
    )


def _verify(sq, cone1, cone2, phi1, phi2, H1, H2, h_second) -> None:
    def require(ok: bool, identity: str) -> None:
        if not ok:
            raise ConeEquivalenceError(f"cone identity fails: {identity}", identity)

    for name, phi in (("varphi′", phi1), ("varphi″", phi2)):
        report = validate_map(phi, chain=True)
        require(report.ok, f"{name} is a chain map")

    require(not _identity_violation(gf2.matmul(phi2.array, phi1.array) ^ gf2.identity(cone1.size), H1),
            "varphi″varphi′ − id = dH′ + H′d")
    require(not _identity_violation(gf2.matmul(phi1.array, phi2.array) ^ gf2.identity(cone2.size), H2),
            "varphi′varphi″ − id = dH″ + H″d")
    require(not _identity_violation(
        gf2.matmul(sq.phi_second.array, sq.f_second.array) ^ gf2.matmul(sq.f_prime.array, sq.psi_second.array),
        h_second), "φ″f″ − f′ψ″ = dh″ + h″d")

    # inclusion and projection squares commute on the nose
    for phi, left, right, inner, outer in (
        (phi1, sq.phi_prime, sq.psi_prime, cone1, cone2),
        (phi2, sq.phi_second, sq.psi_second, cone2, cone1),
    ):
        a_in, a_out = right.source.size, right.target.size
        require(np.array_equal(phi.array[a_out:, a_in:], left.array) and not phi.array[:a_out, a_in:].any(),
                "inclusion square commutes")
        require(np.array_equal(phi.array[:a_out, :a_in], right.array), "projection square commutes")


def identity_square(A: FilteredComplex, B: FilteredComplex, f) -> ConeEquivalenceInput:
    """The square with identical rows, identity verticals and zero homotopies."""
    def zero(C):
        return linear_map(C, C, gf2.zeros(C.size, C.size), 0.0)

    return ConeEquivalenceInput(
        f_prime=f, f_second=f,
        psi_prime=identity_map(A), psi_second=identity_map(A),
        phi_prime=identity_map(B), phi_second=identity_map(B),
        h_prime=linear_map(A, B, gf2.zeros(B.size, A.size), f.shift),
        k_prime=zero(A), k_second=zero(A), r_prime=zero(B), r_second=zero(B),
    )


def random_cone_square(
    seed,
    max_generators: int = 6,
    grid: Optional[List[float]] = None,
    shift_budget: float = 1.0,
    pad_pairs: int = 1,
) -> ConeEquivalenceInput:
    """
    A square built from two generated homotopy equivalences ψ: A′ ≃ A″ and
    φ: B′ ≃ B″, with f″ = φ′f′ψ″ and h′ = φ′f′k′.
    """
    rng = make_rng(seed)
    grid = grid or [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
    A = random_complex(int(rng.integers(1, max_generators + 1)), grid, 0.4, rng, name="A′")
    B = random_complex(int(rng.integers(1, max_generators + 1)), grid, 0.4, rng, name="B′")
    s_f = float(rng.choice([0.0, 0.5, 1.0]))
    f_prime = random_filtered_map(A, B, s_f, rng)
    wa = random_homotopy_equivalence(A, pad_pairs, shift_budget, rng)
    wb = random_homotopy_equivalence(B, pad_pairs, shift_budget, rng)
    f_second = compose(wb.f, compose(f_prime, wa.g))
    h_prime = compose(wb.f, compose(f_prime, wa.h))
    h_shift = max(
        f_prime.shift, f_second.shift, wa.f.shift, wb.f.shift,
        minimal_shift(h_prime.array, A, wb.C_prime),
    )
    h_prime = linear_map(A, wb.C_prime, h_prime.array, h_shift)
    return ConeEquivalenceInput(
        f_prime=f_prime,
        f_second=chain_map(wa.C_prime, wb.C_prime, f_second.array, f_second.shift),
        psi_prime=wa.f, psi_second=wa.g,
        phi_prime=wb.f, phi_second=wb.g,
        h_prime=h_prime,
        k_prime=wa.h, k_second=wa.h_prime,
        r_prime=wb.h, r_second=wb.h_prime,
    )


def measured_ratio_ok(result: ConeEquivalenceResult, constant: float = CANDIDATE_CONSTANT) -> bool:
    """Every measured shift is at most ``constant`` times the sum of input shifts."""
    worst = max(result.measured_shifts.values(), default=0.0)
    return worst <= constant * result.input_shift_sum + 1e-9


def summary(result: ConeEquivalenceResult) -> Dict[str, float]:
    return {**result.measured_shifts, "input_shift_sum": result.input_shift_sum, "ratio": result.max_ratio}

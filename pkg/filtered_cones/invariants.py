"""
Spectral invariants, spectral range and boundary depth.

``profile`` reads the invariants off the barcode; ``profile_oracle``
recomputes them from persistence ranks only. Extended reals are floats
with ``math.inf``.
"""

import logging
import math
from typing import Iterable, List, Sequence

from . import gf2
from .complex import check_shift, require_valid, require_valid_map
from .exceptions import DegenerateValueError, ValidationError
from .models import AggregateProfile, Barcode, FilteredComplex, FilteredMap, InvariantProfile
from .persistence import PersistenceOracle, barcode, critical_values, probe_levels

logger = logging.getLogger(__name__)

INF = math.inf


def ext_add(a: float, b: float) -> float:
    """a + b on the extended reals; (+inf) + (-inf) is undefined."""
    if math.isinf(a) and math.isinf(b) and (a > 0) != (b > 0):
        raise DegenerateValueError(f"undefined extended-real sum {a} + {b}")
    return a + b


def ext_sub(a: float, b: float) -> float:
    return ext_add(a, -b)


def ext_max(*values: float) -> float:
    return max(values)


def ext_min(*values: float) -> float:
    return min(values)


def acyclic_profile(beta: float = 0.0) -> InvariantProfile:
    return InvariantProfile(-INF, INF, -INF, beta)


def profile_from_barcode(bars: Barcode) -> InvariantProfile:
    """σ+ = latest infinite-bar birth, σ− = earliest, β = longest finite bar."""
    beta = max((b.length for b in bars.finite_bars), default=0.0)
    births = [b.birth for b in bars.infinite_bars]
    if not births:
        return acyclic_profile(beta)
    sigma_plus, sigma_minus = max(births), min(births)
    return InvariantProfile(sigma_plus, sigma_minus, sigma_plus - sigma_minus, beta)


def profile(C: FilteredComplex) -> InvariantProfile:
    """(σ+, σ−, ρ, β) of C, from its barcode."""
    return profile_from_barcode(barcode(C))


def profile_oracle(C: FilteredComplex) -> InvariantProfile:
    """
    (σ+, σ−, ρ, β) from the definitions, by rank computations at critical
    values and midpoints. Never looks at the barcode.
    """
    require_valid(C)
    if C.is_empty():
        return acyclic_profile()
    oracle = PersistenceOracle(C)
    levels = probe_levels(C)
    critical = critical_values(C)
    dim_h = oracle.homology_dimension()

    beta = 0.0
    for alpha in levels:
        target = oracle.rank(alpha)
        candidates = [alpha] + [c for c in critical if c > alpha]
        for level in candidates:
            if oracle.rank(alpha, level) == target:
                beta = max(beta, level - alpha)
                break

    if dim_h == 0:
        return acyclic_profile(beta)
    # i^t is surjective from sigma_plus on and zero strictly below sigma_minus
    sigma_plus = min(c for c in critical if oracle.rank(c) == dim_h)
    sigma_minus = min(c for c in critical if oracle.rank(c) > 0)
    return InvariantProfile(sigma_plus, sigma_minus, sigma_plus - sigma_minus, beta)


def spectral_invariant(C: FilteredComplex, cycle: Iterable[str]) -> float:
    """σ([cycle]): the first level whose homology hits the class; −inf for the zero class."""
    require_valid(C)
    vector = C.vector(cycle)
    if gf2.matmul(C.boundary_matrix, vector[:, None]).any():
        raise ValidationError("spectral invariant needs a cycle", [f"d({sorted(C.support(vector))}) ≠ 0"])
    oracle = PersistenceOracle(C)
    if gf2.contains(oracle.boundaries(INF), vector):
        return -INF
    for level in critical_values(C):
        if oracle.in_image(vector, level):
            return level
    raise AssertionError("a cycle must be represented at the top level")


def bars_reading(C: FilteredComplex) -> dict:
    """
    Which barcode reading the σ± definitions agree with on C.

    Returns the reading for each edge, or ``"degenerate"`` when C has at most
    one infinite bar birth level and both readings agree.
    """
    births = sorted({b.birth for b in barcode(C).infinite_bars})
    oracle = profile_oracle(C)
    if len(births) < 2:
        return {"sigma_plus": "degenerate", "sigma_minus": "degenerate"}
    return {
        "sigma_plus": "max-birth" if oracle.sigma_plus == births[-1] else "min-birth",
        "sigma_minus": "min-birth" if oracle.sigma_minus == births[0] else "max-birth",
    }


def map_boundary_depth(f: FilteredMap, s: float) -> float:
    """
    β_s(f): how long image classes of f that die in C′ survive, measured at shift s.

    For each source level α the subspace f(Z_α) + B′_{α+s}, intersected with
    the classes that die in C′, must lie in B′_{α+s+b}.
    """
    require_valid_map(f)
    check_shift(f, s)
    source, target = f.source, f.target
    if source.is_empty() or target.is_empty() or f.is_zero():
        return 0.0

    src = PersistenceOracle(source)
    tgt = PersistenceOracle(target)
    target_critical = critical_values(target)
    levels = sorted(set(critical_values(source)) | {c - s for c in target_critical})
    dying_all = tgt.boundaries(INF)

    depth = 0.0
    for alpha in levels:
        Z = src.cycles(alpha)
        if Z.shape[0] == 0:
            continue
        level = alpha + s
        images = gf2.matmul(Z, f.array.T)
        U = gf2.span_sum(images, tgt.boundaries(level))
        K = gf2.intersection(tgt.cycles(level), dying_all)
        W = gf2.intersection(U, K)
        if W.shape[0] == 0:
            continue
        for t in [level] + [c for c in target_critical if c > level]:
            if gf2.contains(tgt.boundaries(t), W):
                depth = max(depth, t - level)
                break
    return depth


def aggregate(profiles: Sequence[InvariantProfile]) -> AggregateProfile:
    """σ̃+ = max σ+, σ̃− = min σ−, ρ̃ = σ̃+ − σ̃−."""
    if not profiles:
        raise DegenerateValueError("aggregate needs at least one profile")
    sigma_plus = ext_max(*(p.sigma_plus for p in profiles))
    sigma_minus = ext_min(*(p.sigma_minus for p in profiles))
    return AggregateProfile(sigma_plus, sigma_minus, ext_sub(sigma_plus, sigma_minus))


def aggregate_complexes(complexes: Iterable[FilteredComplex]) -> AggregateProfile:
    return aggregate([profile(C) for C in complexes])


def profiles_agree(first: InvariantProfile, second: InvariantProfile) -> bool:
    """Exact equality including infinities."""
    return all(
        a == b
        for a, b in zip(
            (first.sigma_plus, first.sigma_minus, first.rho, first.beta),
            (second.sigma_plus, second.sigma_minus, second.rho, second.beta),
        )
    )


def rank_duality_violations(C: FilteredComplex) -> List[str]:
    """Critical pairs (α, β) where the rank oracle disagrees with bar counts."""
    bars = barcode(C)
    if C.is_empty():
        return []
    oracle = PersistenceOracle(C)
    levels = critical_values(C)
    violations = []
    for i, alpha in enumerate(levels):
        for beta in list(levels[i:]) + [INF]:
            expected = bars.alive(alpha, beta)
            actual = oracle.rank(alpha, beta)
            if expected != actual:
                violations.append(f"rank i^({beta},{alpha}) = {actual}, bars give {expected}")
    return violations


def infinite_bar_count_matches(C: FilteredComplex) -> bool:
    """Infinite bars = dim ker d − rank d."""
    D = C.boundary_matrix
    r = gf2.rank(D) if C.size else 0
    return len(barcode(C).infinite_bars) == (C.size - r) - r

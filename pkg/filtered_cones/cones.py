"""
Filtered mapping cones, refiltering, reassociation, iterated cones, the
iterated spectral-range bound and tensor products.

Cone convention: [A → (f, s) → B]^{≤α} = A^{≤α−s} ⊕ B^{≤α}. A-side
generators are renamed ``<prefix><id>`` and raised by s; B-side
generators keep their ids and filtrations.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import checks
from .complex import (
    check_shift,
    chain_map,
    fmt,
    relabel,
    require_valid,
    require_valid_map,
)
from .exceptions import ConeConstructionError, DegenerateValueError, InvalidComplexError, ShiftError
from .invariants import aggregate, ext_add, ext_max, ext_min, ext_sub, profile
from .models import (
    AggregateProfile,
    BoundConstants,
    ComparisonReport,
    ConeInput,
    FilteredComplex,
    FilteredMap,
    InequalityCheck,
    InvariantProfile,
    IteratedBound,
    IteratedConeSpec,
)

logger = logging.getLogger(__name__)

SOURCE_PREFIX = "a/"
ATTACHMENT_PREFIX = "e/"


def mapping_cone(cone: ConeInput, prefix: str = SOURCE_PREFIX, name: Optional[str] = None) -> FilteredComplex:
    """
    [A → (f, s) → B] with d(a) = d_A(a) + f(a) and d(b) = d_B(b).
    """
    f, s = cone.f, cone.shift
    require_valid_map(f)
    check_shift(f, s)
    A, B = f.source, f.target
    renamed = {g: f"{prefix}{g}" for g in A.ids}
    clash = set(renamed.values()) & set(B.ids)
    if clash:
        raise ValueError(f"cone prefix '{prefix}' collides with target ids {sorted(clash)}")

    generators = [(renamed[g.id], g.filtration + s) for g in A.generators]
    generators += [(g.id, g.filtration) for g in B.generators]
    boundary: Dict[str, set] = {}
    for g in A.ids:
        boundary[renamed[g]] = {renamed[x] for x in A.boundary_of(g)} | set(f.matrix.get(g, ()))
    for g in B.ids:
        boundary[g] = set(B.boundary_of(g))
    return FilteredComplex.build(name or f"[{A.name} → ({fmt(s)}) → {B.name}]", generators, boundary)


def cone_inclusion(cone: ConeInput, C: FilteredComplex) -> FilteredMap:
    """The inclusion B → [A → B], which preserves filtration."""
    B = cone.f.target
    array = np.zeros((C.size, B.size), dtype=np.uint8)
    for j, g in enumerate(B.ids):
        array[C.index[g], j] = 1
    return chain_map(B, C, array)


def cone_estimates(
    pa: InvariantProfile,
    pb: InvariantProfile,
    pc: InvariantProfile,
    s: float,
    tolerance: float = checks.DEFAULT_TOLERANCE,
) -> List[InequalityCheck]:
    """
    The single-cone estimates for C = [A → (f, s) → B], given the three
    profiles. Sides are evaluated in extended-real arithmetic; a side that
    ends up infinite makes its check vacuous.
    """
    def tilde() -> float:
        return aggregate([pa, pb]).rho_tilde

    return [
        checks.at_least(
            "cone sigma- lower bound", pc.sigma_minus,
            lambda: ext_min(ext_sub(pb.sigma_minus, pa.beta), ext_add(pa.sigma_minus, s)), tolerance,
        ),
        checks.at_most(
            "cone sigma+ upper bound", pc.sigma_plus,
            lambda: ext_max(pb.sigma_plus, pa.sigma_plus + pb.beta + s), tolerance,
        ),
        checks.at_most(
            "cone beta upper bound", pc.beta,
            lambda: pa.beta + pb.beta + ext_max(0.0, ext_sub(pa.sigma_plus, pb.sigma_minus) + s), tolerance,
        ),
        checks.at_most(
            "cone rho upper bound", pc.rho,
            lambda: ext_sub(ext_max(pa.sigma_plus, pb.sigma_plus), ext_min(pa.sigma_minus, pb.sigma_minus))
            + pa.beta + pb.beta + s,
            tolerance,
        ),
        checks.at_most("cone rho by aggregate", pc.rho, lambda: tilde() + pa.beta + pb.beta + s, tolerance),
        checks.at_most("cone beta by aggregate", pc.beta, lambda: tilde() + pa.beta + pb.beta + s, tolerance),
    ]


def _compare(first: FilteredComplex, second: FilteredComplex) -> ComparisonReport:
    return ComparisonReport(profile(first), profile(second))


def refilter_cone(
    f: FilteredMap, s: float, s_prime: float, tolerance: float = checks.DEFAULT_TOLERANCE
) -> Tuple[FilteredComplex, FilteredComplex, ComparisonReport]:
    """
    Cones of the same map with shifts s ≤ s′; σ± move by at most s′ − s,
    ρ and β by at most 2(s′ − s).
    """
    if s_prime < s:
        raise ShiftError(f"refiltering needs s' >= s, got {fmt(s_prime)} < {fmt(s)}")
    C = mapping_cone(ConeInput(f, s))
    C_prime = mapping_cone(ConeInput(f, s_prime))
    report = _compare(C, C_prime)
    gap = s_prime - s
    p, q = report.first, report.second
    report.checks = [
        checks.within("refilter sigma+", q.sigma_plus, p.sigma_plus, gap, tolerance),
        checks.within("refilter sigma-", q.sigma_minus, p.sigma_minus, gap, tolerance),
        checks.within("refilter rho", q.rho, p.rho, 2 * gap, tolerance),
        checks.within("refilter beta", q.beta, p.beta, 2 * gap, tolerance),
    ]
    report.details = {"s": s, "s_prime": s_prime}
    return C, C_prime, report


def _component(g: FilteredMap, rows: Sequence[str], target: FilteredComplex, rename: Dict[str, str]) -> np.ndarray:
    """Rows of g's array restricted to ``rows``, re-indexed into ``target``."""
    array = np.zeros((target.size, g.source.size), dtype=np.uint8)
    for row_id in rows:
        array[target.index[rename.get(row_id, row_id)]] = g.array[g.target.index[row_id]]
    return array


def reassociate(
    E: FilteredComplex,
    inner: ConeInput,
    g: FilteredMap,
    s_g: float,
    tolerance: float = checks.DEFAULT_TOLERANCE,
) -> Tuple[FilteredComplex, FilteredComplex, ComparisonReport]:
    """
    Compare C = [E → (g, s_g) → [F → (f, s_f) → G]] with
    C′ = [[E → (g′, s_g′) → F] → (f′, s_f) → G].

    g′ is the F-component of g with s_g′ = max(0, s_g − s_f); f′ is f on F
    and the G-component of g on E. C′ is relabelled onto C's ids; the two
    share generators and differential and only E's filtration moves.
    """
    f, s_f = inner.f, inner.shift
    F, G = f.source, f.target
    K = mapping_cone(inner, prefix=SOURCE_PREFIX)
    if g.source.ids != E.ids or g.target.ids != K.ids:
        raise ValueError("g must map E into the inner cone")
    C = mapping_cone(ConeInput(g, s_g), prefix=ATTACHMENT_PREFIX, name="C")

    f_rows = [f"{SOURCE_PREFIX}{x}" for x in F.ids]
    to_f = {f"{SOURCE_PREFIX}{x}": x for x in F.ids}
    s_g_prime = max(0.0, s_g - s_f)
    g_prime = chain_map(E, F, _component(g, f_rows, F, to_f), s_g_prime)
    require_valid_map(g_prime)
    inner_prime = mapping_cone(ConeInput(g_prime, s_g_prime), prefix=ATTACHMENT_PREFIX, name="[E → F]")

    f_array = np.zeros((G.size, inner_prime.size), dtype=np.uint8)
    g_on_g = _component(g, list(G.ids), G, {})
    for j, e in enumerate(E.ids):
        f_array[:, inner_prime.index[f"{ATTACHMENT_PREFIX}{e}"]] = g_on_g[:, j]
    for j, x in enumerate(F.ids):
        f_array[:, inner_prime.index[x]] = f.array[:, j]
    f_prime = chain_map(inner_prime, G, f_array, s_f)
    C_prime = mapping_cone(ConeInput(f_prime, s_f), prefix=SOURCE_PREFIX, name="C′")

    back = {f"{SOURCE_PREFIX}{ATTACHMENT_PREFIX}{e}": f"{ATTACHMENT_PREFIX}{e}" for e in E.ids}
    C_prime = relabel(C_prime, back)
    if set(C_prime.ids) != set(C.ids) or dict(C_prime.boundary) != dict(C.boundary):
        raise AssertionError("reassociated cone does not share generators and differential")

    moved = [C_prime.filtration_of(x) - C.filtration_of(x) for x in C.ids]
    identity_shift = max([0.0] + moved)
    inverse_shift = max([0.0] + [-m for m in moved])
    gap = abs(s_f - s_g)

    report = _compare(C, C_prime)
    p, q = report.first, report.second
    report.checks = [
        checks.at_most("identity C→C′ shift", identity_shift, max(0.0, s_f - s_g), tolerance),
        checks.at_most("identity C′→C shift", inverse_shift, 0.0, tolerance),
        checks.within("reassoc sigma+", q.sigma_plus, p.sigma_plus, gap, tolerance),
        checks.within("reassoc sigma-", q.sigma_minus, p.sigma_minus, gap, tolerance),
        checks.within("reassoc beta", q.beta, p.beta, 2 * gap, tolerance),
    ]
    report.details = {
        "s_f": s_f,
        "s_g": s_g,
        "s_g_prime": s_g_prime,
        "identity_shift": identity_shift,
        "max_filtration_move": max([0.0] + [abs(m) for m in moved]),
    }
    return C, C_prime, report


def iterated_cone(spec: IteratedConeSpec) -> Tuple[FilteredComplex, List[FilteredComplex]]:
    """
    C_0 = A_0, C_i = [A_i → (φ_i, s_i) → C_{i−1}]; returns C_r and every partial cone.
    """
    if not spec.attachments:
        raise ConeConstructionError("iterated cone needs at least one attachment", 0)
    if len(spec.maps) != spec.r or len(spec.shifts) != spec.r:
        raise ConeConstructionError(
            f"expected {spec.r} maps and shifts, got {len(spec.maps)} and {len(spec.shifts)}", len(spec.maps)
        )
    partial = require_valid(spec.attachments[0])
    partials = [partial]
    for stage in range(1, spec.r + 1):
        phi, s, A = spec.maps[stage - 1], spec.shifts[stage - 1], spec.attachments[stage]
        if not phi.source.same_structure(A):
            raise ConeConstructionError(f"map at stage {stage} does not start at A_{stage}", stage)
        if not phi.target.same_structure(partial):
            raise ConeConstructionError(f"map at stage {stage} does not land in C_{stage - 1}", stage)
        try:
            partial = mapping_cone(ConeInput(phi, s), prefix=f"A{stage}/", name=f"C{stage}")
        except (ShiftError, ValueError) as e:
            raise ConeConstructionError(f"stage {stage}: {e}", stage) from e
        partials.append(partial)
    return partial, partials


def _require_finite(*values: float) -> None:
    if any(math.isinf(v) or math.isnan(v) for v in values):
        raise DegenerateValueError("iterated bound needs finite spectral edges")


def iterated_bound(
    r: int, tilde: AggregateProfile, betas: Sequence[float], shifts: Sequence[float]
) -> IteratedBound:
    """
    Upper bound on ρ(C_r) from unrolling the single-cone estimates
    σ+(C) ≤ σ̃+ + β(B) + s, σ−(C) ≥ σ̃− − β(A), β(C) ≤ β(A) + β(B) + ρ̃ + s.

    Running bounds are linear forms over (σ̃+, σ̃−, β_0..β_r, s_1..s_r);
    a_r, b_r, e_r are the largest coefficients of ρ̃, the β's and the s's.
    """
    if r < 1:
        raise ValueError(f"iterated bound needs r >= 1, got {r}")
    if len(betas) != r + 1 or len(shifts) != r:
        raise ValueError(f"need {r + 1} boundary depths and {r} shifts")
    _require_finite(tilde.sigma_plus_tilde, tilde.sigma_minus_tilde, *betas, *shifts)

    width = 2 + (r + 1) + r
    plus, minus = 0, 1

    def beta_at(i: int) -> int:
        return 2 + i

    def shift_at(i: int) -> int:
        return 2 + (r + 1) + (i - 1)

    def unit(k: int) -> np.ndarray:
        v = np.zeros(width)
        v[k] = 1.0
        return v

    upper, lower, depth = unit(plus), unit(minus), unit(beta_at(0))
    for i in range(1, r + 1):
        upper, lower, depth = (
            upper + depth + unit(shift_at(i)),
            lower - unit(beta_at(i)),
            unit(beta_at(i)) + depth + upper - lower + unit(shift_at(i)),
        )
    rho_form = upper - lower

    values = np.array(
        [tilde.sigma_plus_tilde, tilde.sigma_minus_tilde, *betas, *shifts], dtype=float
    )
    beta_coefficients = tuple(float(rho_form[beta_at(i)]) for i in range(r + 1))
    shift_coefficients = tuple(float(rho_form[shift_at(i)]) for i in range(1, r + 1))
    constants = BoundConstants(
        r=r,
        a=float(rho_form[plus]),
        b=max(beta_coefficients),
        e=max(shift_coefficients),
    )
    rho_tilde = tilde.sigma_plus_tilde - tilde.sigma_minus_tilde
    lemma_bound = constants.a * rho_tilde + constants.b * sum(betas) + constants.e * sum(shifts)
    return IteratedBound(
        bound=float(rho_form @ values),
        lemma_bound=float(lemma_bound),
        constants=constants,
        beta_coefficients=beta_coefficients,
        shift_coefficients=shift_coefficients,
    )


def tensor_product(A: FilteredComplex, B: FilteredComplex, name: Optional[str] = None) -> FilteredComplex:
    """A ⊗ B over F2 with filtration(g⊗h) = filtration(g) + filtration(h)."""
    require_valid(A)
    require_valid(B)
    pairs = sorted(
        ((i, j) for i in range(A.size) for j in range(B.size)),
        key=lambda p: (A.generators[p[0]].filtration + B.generators[p[1]].filtration, p),
    )

    def pid(g: str, h: str) -> str:
        return f"{g}|{h}"

    generators = [
        (pid(A.ids[i], B.ids[j]), A.generators[i].filtration + B.generators[j].filtration)
        for i, j in pairs
    ]
    seen: Dict[str, Tuple[str, str]] = {}
    clashes = []
    for i, j in pairs:
        key = pid(A.ids[i], B.ids[j])
        if key in seen:
            clashes.append(f"'{key}' names both {seen[key]} and {(A.ids[i], B.ids[j])}")
        seen[key] = (A.ids[i], B.ids[j])
    if clashes:
        raise InvalidComplexError(f"tensor ids of {A.name} and {B.name} are ambiguous", clashes)
    boundary = {}
    for i, j in pairs:
        g, h = A.ids[i], B.ids[j]
        support = {pid(x, h) for x in A.boundary_of(g)} ^ {pid(g, y) for y in B.boundary_of(h)}
        boundary[pid(g, h)] = support
    return FilteredComplex.build(name or f"{A.name}⊗{B.name}", generators, boundary)

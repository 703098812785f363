"""
Filtered complexes and filtered maps: validation, shifts, sums and map algebra.

Maps are handled as ``(target.size, source.size)`` F2 arrays indexed by the
declared generator order of each complex.
"""

import logging
from typing import Dict, Iterable, Mapping, Optional, Tuple, Type, Union

import numpy as np

from . import gf2
from .exceptions import InvalidComplexError, InvalidMapError, ShiftError, ValidationError
from .models import (
    FilteredComplex,
    FilteredLinearMap,
    FilteredMap,
    HomotopyEquivalenceWitness,
    ValidationReport,
)

logger = logging.getLogger(__name__)

AnyMap = Union[FilteredMap, FilteredLinearMap]


def fmt(value: float) -> str:
    """Render a filtration value the way violations and reports print it."""
    return f"{value:g}"


def validate_complex(C: FilteredComplex) -> ValidationReport:
    """
    Check d∘d = 0, filtration monotonicity and that every boundary id is declared.

    Violations are returned as data; nothing is raised.
    """
    report = ValidationReport()
    seen = set()
    for g in C.generators:
        if not g.id:
            report.violations.append("empty generator id")
        elif g.id in seen:
            report.violations.append(f"duplicate generator id '{g.id}'")
        seen.add(g.id)

    for source, support in C.boundary.items():
        if source not in C.index:
            report.violations.append(f"boundary given for unknown generator '{source}'")
            continue
        for target in sorted(support):
            if target not in C.index:
                report.violations.append(f"unknown generator '{target}' in boundary of '{source}'")
                continue
            a, b = C.filtration_of(target), C.filtration_of(source)
            if a > b:
                report.violations.append(
                    f"filtration({target})={fmt(a)} > filtration({source})={fmt(b)}"
                )

    if not report.violations:
        square = gf2.matmul(C.boundary_matrix, C.boundary_matrix)
        for j in np.flatnonzero(square.any(axis=0)):
            report.violations.append(f"d∘d ≠ 0 at {C.ids[j]}")
    return report


def require_valid(C: FilteredComplex) -> FilteredComplex:
    """Return ``C`` or raise InvalidComplexError with its violations."""
    report = validate_complex(C)
    if not report.ok:
        raise InvalidComplexError(
            f"complex '{C.name}' is invalid: {'; '.join(report.violations)}",
            report.violations,
        )
    return C


def shift_complex(C: FilteredComplex, s: float) -> FilteredComplex:
    """C[s]: every filtration value lowered by s, so (C[s])^{≤α} = C^{≤α+s}."""
    if s == 0:
        return C
    return FilteredComplex(
        name=f"{C.name}[{fmt(s)}]",
        generators=tuple(type(g)(g.id, g.filtration - s) for g in C.generators),
        boundary=C.boundary,
    )


def raise_filtration(C: FilteredComplex, offset: float, name: Optional[str] = None) -> FilteredComplex:
    """Every filtration value raised by ``offset``."""
    return FilteredComplex(
        name=name or C.name,
        generators=tuple(type(g)(g.id, g.filtration + offset) for g in C.generators),
        boundary=C.boundary,
    )


def relabel(C: FilteredComplex, mapping: Mapping[str, str], name: Optional[str] = None) -> FilteredComplex:
    """Rename generator ids; ids missing from ``mapping`` keep their name."""
    new_ids = [mapping.get(g, g) for g in C.ids]
    if len(set(new_ids)) != len(new_ids):
        raise ValueError("relabel mapping is not injective on the generators")
    return FilteredComplex.build(
        name or C.name,
        [(mapping.get(g.id, g.id), g.filtration) for g in C.generators],
        {mapping.get(k, k): [mapping.get(v, v) for v in vs] for k, vs in C.boundary.items()},
    )


def direct_sum(A: FilteredComplex, B: FilteredComplex, name: Optional[str] = None) -> FilteredComplex:
    """
    A ⊕ B with block-diagonal boundary.

    Ids are kept when the two generator sets are disjoint; otherwise the
    summands are namespaced as ``0/<id>`` and ``1/<id>``.
    """
    name = name or f"({A.name} ⊕ {B.name})"
    if set(A.ids) & set(B.ids):
        A = relabel(A, {g: f"0/{g}" for g in A.ids})
        B = relabel(B, {g: f"1/{g}" for g in B.ids})
    boundary: Dict[str, Iterable[str]] = dict(A.boundary)
    boundary.update(B.boundary)
    return FilteredComplex(
        name=name,
        generators=A.generators + B.generators,
        boundary=FilteredComplex.build(name, [], boundary).boundary,
    )


def minimal_shift(array: np.ndarray, source: FilteredComplex, target: FilteredComplex) -> float:
    """Smallest s ≥ 0 for which the linear map ``array`` is s-filtered."""
    array = np.asarray(array)
    if array.size == 0 or not array.any():
        return 0.0
    gaps = target.filtrations[:, None] - source.filtrations[None, :]
    return max(0.0, float(np.max(np.where(array.astype(bool), gaps, -np.inf))))


def validate_map(f: AnyMap, chain: Optional[bool] = None) -> ValidationReport:
    """
    Check the s-filtered condition for the declared shift and, for chain
    maps, f∘d = d∘f. Also reports the minimal admissible shift.
    """
    if chain is None:
        chain = isinstance(f, FilteredMap)
    report = ValidationReport()
    if f.shift < 0:
        report.violations.append(f"negative shift {fmt(f.shift)}")

    for source_id, support in f.matrix.items():
        if source_id not in f.source.index:
            report.violations.append(f"map given for unknown source generator '{source_id}'")
            continue
        for target_id in sorted(support):
            if target_id not in f.target.index:
                report.violations.append(f"unknown target generator '{target_id}' in image of '{source_id}'")
                continue
            a = f.target.filtration_of(target_id)
            b = f.source.filtration_of(source_id)
            if a > b + f.shift:
                report.violations.append(
                    f"filtration({target_id})={fmt(a)} > filtration({source_id})={fmt(b)} + shift {fmt(f.shift)}"
                )

    report.minimal_shift = minimal_shift(f.array, f.source, f.target)
    if chain:
        left = gf2.matmul(f.array, f.source.boundary_matrix)
        right = gf2.matmul(f.target.boundary_matrix, f.array)
        for j in np.flatnonzero((left ^ right).any(axis=0)):
            report.violations.append(f"f∘d ≠ d∘f at {f.source.ids[j]}")
    return report


def require_valid_map(f: AnyMap, chain: Optional[bool] = None) -> AnyMap:
    """Return ``f`` or raise InvalidMapError with its violations."""
    report = validate_map(f, chain)
    if not report.ok:
        raise InvalidMapError(f"map is invalid: {'; '.join(report.violations)}", report.violations)
    return f


def check_shift(f: AnyMap, s: float) -> None:
    """Raise ShiftError unless ``f`` is s-filtered."""
    if s < 0:
        raise ShiftError(f"shift must be non-negative, got {fmt(s)}")
    needed = minimal_shift(f.array, f.source, f.target)
    if s < needed:
        raise ShiftError(f"shift {fmt(s)} is below the minimal admissible shift {fmt(needed)}")


# Map algebra


def linear_map(
    source: FilteredComplex,
    target: FilteredComplex,
    array: np.ndarray,
    shift: Optional[float] = None,
    cls: Type[FilteredLinearMap] = FilteredLinearMap,
):
    """Wrap an array; ``shift`` defaults to the measured minimal shift."""
    if shift is None:
        shift = minimal_shift(array, source, target)
    return cls.from_array(source, target, shift, gf2.as_gf2(array))


def chain_map(source: FilteredComplex, target: FilteredComplex, array: np.ndarray, shift: Optional[float] = None) -> FilteredMap:
    return linear_map(source, target, array, shift, FilteredMap)


def _result_class(*maps: AnyMap) -> Type[FilteredLinearMap]:
    return FilteredMap if all(isinstance(m, FilteredMap) for m in maps) else FilteredLinearMap


def identity_map(C: FilteredComplex) -> FilteredMap:
    return chain_map(C, C, gf2.identity(C.size), 0.0)


def zero_map(A: FilteredComplex, B: FilteredComplex, shift: float = 0.0) -> FilteredMap:
    return chain_map(A, B, gf2.zeros(B.size, A.size), shift)


def compose(g: AnyMap, f: AnyMap) -> FilteredLinearMap:
    """g∘f; declared shifts add."""
    if f.target.ids != g.source.ids:
        raise ValueError(f"cannot compose: target of '{f.target.name}' is not source of '{g.source.name}'")
    return linear_map(f.source, g.target, gf2.matmul(g.array, f.array), f.shift + g.shift, _result_class(f, g))


def add_maps(f: AnyMap, g: AnyMap) -> FilteredLinearMap:
    """f + g over F2; declared shift is the larger one."""
    if f.source.ids != g.source.ids or f.target.ids != g.target.ids:
        raise ValueError("cannot add maps with different source or target")
    return linear_map(f.source, f.target, f.array ^ g.array, max(f.shift, g.shift), _result_class(f, g))


def commutator(h: AnyMap) -> FilteredMap:
    """[d, h] = d∘h + h∘d, a chain map of the same shift as h."""
    array = gf2.matmul(h.target.boundary_matrix, h.array) ^ gf2.matmul(h.array, h.source.boundary_matrix)
    return chain_map(h.source, h.target, array, h.shift)


def same_array(f: AnyMap, g: AnyMap) -> bool:
    return f.array.shape == g.array.shape and bool(np.array_equal(f.array, g.array))


def homotopy_identity_holds(left: np.ndarray, h: AnyMap) -> bool:
    """True when ``left`` equals d∘h + h∘d."""
    return bool(np.array_equal(gf2.as_gf2(left), commutator(h).array))


# Witnesses


def validate_witness(w: HomotopyEquivalenceWitness) -> ValidationReport:
    """Check validity, shifts and both homotopy identities of a witness."""
    report = ValidationReport()
    for label, C in (("C", w.C), ("C′", w.C_prime)):
        report.violations.extend(f"{label}: {v}" for v in validate_complex(C).violations)
    if not report.ok:
        return report

    for label, m, chain in (("f", w.f, True), ("g", w.g, True), ("h", w.h, False), ("h′", w.h_prime, False)):
        sub = validate_map(m, chain)
        report.violations.extend(f"{label}: {v}" for v in sub.violations)
        if sub.minimal_shift is not None and sub.minimal_shift > w.shift:
            report.violations.append(
                f"{label} needs shift {fmt(sub.minimal_shift)} > witness shift {fmt(w.shift)}"
            )

    gf = gf2.matmul(w.g.array, w.f.array) ^ gf2.identity(w.C.size)
    if not homotopy_identity_holds(gf, w.h):
        report.violations.append("g∘f − id ≠ dh + hd")
    fg = gf2.matmul(w.f.array, w.g.array) ^ gf2.identity(w.C_prime.size)
    if not homotopy_identity_holds(fg, w.h_prime):
        report.violations.append("f∘g − id ≠ dh′ + h′d")
    report.minimal_shift = witness_weight(w)
    return report


def require_valid_witness(w: HomotopyEquivalenceWitness) -> HomotopyEquivalenceWitness:
    report = validate_witness(w)
    if not report.ok:
        raise ValidationError(f"witness is invalid: {'; '.join(report.violations)}", report.violations)
    return w


def witness_weight(w: HomotopyEquivalenceWitness) -> float:
    """Weight of the quasi-isomorphism: the largest measured shift of f, g, h, h′."""
    return max(minimal_shift(m.array, m.source, m.target) for m in (w.f, w.g, w.h, w.h_prime))


def within_distance(w: HomotopyEquivalenceWitness, bound: float) -> bool:
    """True when ``w`` is a quasi-isomorphism of weight at most ``bound``."""
    return witness_weight(w) <= bound


def subcomplex_closed(C: FilteredComplex, alpha: float) -> bool:
    """True when {g : filtration(g) ≤ alpha} is closed under d."""
    below = C.filtrations <= alpha
    D = C.boundary_matrix
    return not D[~below][:, below].any()


def block(array: np.ndarray, rows: Tuple[int, int], cols: Tuple[int, int]) -> np.ndarray:
    """Sub-block ``array[r0:r1, c0:c1]`` as a copy."""
    return np.array(array[rows[0]:rows[1], cols[0]:cols[1]], dtype=np.uint8)

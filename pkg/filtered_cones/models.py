"""
Core data models for the filtered cones toolkit.

Every value is immutable once built. Complexes and maps keep their F2
structure as generator-id supports; matrix views are derived lazily.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

ExtendedReal = float

INF = math.inf


def _freeze_support(support: Mapping[str, Iterable[str]]) -> Mapping[str, FrozenSet[str]]:
    frozen = {key: frozenset(values) for key, values in support.items() if values}
    return MappingProxyType(dict(sorted(frozen.items())))


@dataclass(frozen=True)
class Generator:
    """A basis element of a filtered complex with its filtration value."""
    id: str
    filtration: float


@dataclass(frozen=True)
class FilteredComplex:
    """
    Finite-dimensional chain complex over F2 with a real filtration value
    per generator.

    ``boundary`` maps a generator id to the F2 support of its differential;
    generators with zero differential are omitted.
    """
    name: str
    generators: Tuple[Generator, ...]
    boundary: Mapping[str, FrozenSet[str]] = field(hash=False)

    @classmethod
    def build(
        cls,
        name: str,
        generators: Iterable[Tuple[str, float]],
        boundary: Optional[Mapping[str, Iterable[str]]] = None,
    ) -> "FilteredComplex":
        """Build a complex from ``(id, filtration)`` pairs and a support map."""
        return cls(
            name=name,
            generators=tuple(Generator(str(g), float(a)) for g, a in generators),
            boundary=_freeze_support(boundary or {}),
        )

    @classmethod
    def from_matrix(
        cls,
        name: str,
        ids: Sequence[str],
        filtrations: Sequence[float],
        matrix: np.ndarray,
    ) -> "FilteredComplex":
        """Build a complex whose column j of ``matrix`` is d(ids[j])."""
        boundary = {
            ids[j]: [ids[i] for i in np.flatnonzero(matrix[:, j])]
            for j in range(len(ids))
        }
        return cls.build(name, zip(ids, filtrations), boundary)

    @property
    def size(self) -> int:
        return len(self.generators)

    def is_empty(self) -> bool:
        return not self.generators

    @cached_property
    def ids(self) -> Tuple[str, ...]:
        return tuple(g.id for g in self.generators)

    @cached_property
    def index(self) -> Dict[str, int]:
        return {g.id: i for i, g in enumerate(self.generators)}

    @cached_property
    def filtrations(self) -> np.ndarray:
        return np.array([g.filtration for g in self.generators], dtype=float)

    def filtration_of(self, generator_id: str) -> float:
        return self.generators[self.index[generator_id]].filtration

    def boundary_of(self, generator_id: str) -> FrozenSet[str]:
        return self.boundary.get(generator_id, frozenset())

    @cached_property
    def boundary_matrix(self) -> np.ndarray:
        """``D[i, j] = 1`` iff generator i is in the support of d(generator j)."""
        matrix = np.zeros((self.size, self.size), dtype=np.uint8)
        for source, support in self.boundary.items():
            j = self.index.get(source)
            if j is None:
                continue
            for target in support:
                i = self.index.get(target)
                if i is not None:
                    matrix[i, j] = 1
        matrix.setflags(write=False)
        return matrix

    def vector(self, support: Iterable[str]) -> np.ndarray:
        """Characteristic vector of a set of generator ids."""
        vector = np.zeros(self.size, dtype=np.uint8)
        for generator_id in support:
            vector[self.index[generator_id]] ^= 1
        return vector

    def support(self, vector: np.ndarray) -> FrozenSet[str]:
        return frozenset(self.ids[i] for i in np.flatnonzero(vector))

    def same_structure(self, other: "FilteredComplex") -> bool:
        """Equality of generators, filtrations and differential, ignoring names."""
        return self.generators == other.generators and dict(self.boundary) == dict(other.boundary)


@dataclass(frozen=True)
class FilteredLinearMap:
    """
    F2-linear map between filtered complexes with a declared admissible shift.

    ``matrix`` maps a source generator id to the support of its image.
    """
    source: FilteredComplex
    target: FilteredComplex
    shift: float
    matrix: Mapping[str, FrozenSet[str]] = field(hash=False)

    @classmethod
    def build(
        cls,
        source: FilteredComplex,
        target: FilteredComplex,
        shift: float,
        matrix: Optional[Mapping[str, Iterable[str]]] = None,
    ):
        return cls(source, target, float(shift), _freeze_support(matrix or {}))

    @classmethod
    def from_array(
        cls,
        source: FilteredComplex,
        target: FilteredComplex,
        shift: float,
        array: np.ndarray,
    ):
        """Build from a ``(target.size, source.size)`` 0/1 array."""
        matrix = {
            source.ids[j]: [target.ids[i] for i in np.flatnonzero(array[:, j])]
            for j in range(source.size)
        }
        return cls.build(source, target, shift, matrix)

    @cached_property
    def array(self) -> np.ndarray:
        array = np.zeros((self.target.size, self.source.size), dtype=np.uint8)
        for source_id, support in self.matrix.items():
            j = self.source.index.get(source_id)
            if j is None:
                continue
            for target_id in support:
                i = self.target.index.get(target_id)
                if i is not None:
                    array[i, j] = 1
        array.setflags(write=False)
        return array

    def is_zero(self) -> bool:
        return not self.matrix


@dataclass(frozen=True)
class FilteredMap(FilteredLinearMap):
    """An s-filtered F2 chain map (f∘d = d∘f)."""
    pass


@dataclass(frozen=True)
class HomotopyEquivalenceWitness:
    """
    f: C → C′ and g: C′ → C with homotopies g∘f − id = dh + hd and
    f∘g − id = dh′ + h′d, all s-filtered.
    """
    C: FilteredComplex
    C_prime: FilteredComplex
    f: FilteredMap
    g: FilteredMap
    h: FilteredLinearMap
    h_prime: FilteredLinearMap
    shift: float


@dataclass
class ValidationReport:
    """Outcome of validating a complex, map or witness."""
    violations: List[str] = field(default_factory=list)
    minimal_shift: Optional[float] = None

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True, order=True)
class Bar:
    """Half-open interval [birth, death); death may be +inf."""
    birth: float
    death: float

    @property
    def is_finite(self) -> bool:
        return not math.isinf(self.death)

    @property
    def length(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class Barcode:
    """Multiset of bars, stored sorted so equal multisets compare equal."""
    bars: Tuple[Bar, ...] = ()

    @classmethod
    def of(cls, bars: Iterable[Bar]) -> "Barcode":
        return cls(tuple(sorted(bars)))

    def __len__(self) -> int:
        return len(self.bars)

    def __add__(self, other: "Barcode") -> "Barcode":
        return Barcode.of(self.bars + other.bars)

    @property
    def infinite_bars(self) -> Tuple[Bar, ...]:
        return tuple(b for b in self.bars if not b.is_finite)

    @property
    def finite_bars(self) -> Tuple[Bar, ...]:
        return tuple(b for b in self.bars if b.is_finite)

    def alive(self, alpha: float, beta: float) -> int:
        """Number of bars [b, d) with b ≤ alpha and beta < d; beta = +inf counts infinite bars."""
        if math.isinf(beta):
            return sum(1 for b in self.bars if b.birth <= alpha and not b.is_finite)
        return sum(1 for b in self.bars if b.birth <= alpha and beta < b.death)


@dataclass(frozen=True)
class PersistenceQuery:
    """Selects the map i^{beta, alpha}; beta = +inf selects i^alpha."""
    alpha: float
    beta: float = INF

    def __post_init__(self):
        if self.alpha > self.beta:
            raise ValueError(f"persistence query needs alpha <= beta, got {self.alpha} > {self.beta}")


@dataclass(frozen=True)
class InvariantProfile:
    """(σ+, σ−, ρ, β) of a filtered complex."""
    sigma_plus: ExtendedReal
    sigma_minus: ExtendedReal
    rho: ExtendedReal
    beta: float

    @property
    def is_acyclic(self) -> bool:
        return math.isinf(self.sigma_plus) and self.sigma_plus < 0


@dataclass(frozen=True)
class AggregateProfile:
    """σ̃+, σ̃−, ρ̃ over a collection of complexes."""
    sigma_plus_tilde: ExtendedReal
    sigma_minus_tilde: ExtendedReal
    rho_tilde: ExtendedReal

    @property
    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in (self.sigma_plus_tilde, self.sigma_minus_tilde))


@dataclass(frozen=True)
class ConeInput:
    """An s-filtered chain map f: A → B together with the cone shift s."""
    f: FilteredMap
    shift: float


@dataclass(frozen=True)
class IteratedConeSpec:
    """
    Attachments (A_0, ..., A_r), maps φ_i: A_i → C_{i-1} and shifts s_i.

    ``maps[i-1]`` and ``shifts[i-1]`` belong to stage i.
    """
    attachments: Tuple[FilteredComplex, ...]
    maps: Tuple[FilteredMap, ...] = ()
    shifts: Tuple[float, ...] = ()

    @property
    def r(self) -> int:
        return len(self.attachments) - 1


@dataclass(frozen=True)
class BoundConstants:
    """Coefficients a_r, b_r, e_r of the iterated spectral-range bound."""
    r: int
    a: float
    b: float
    e: float


@dataclass(frozen=True)
class IteratedBound:
    """Unrolled upper bound for ρ(C_r) and its linear-form coefficients."""
    bound: ExtendedReal
    lemma_bound: ExtendedReal
    constants: BoundConstants
    beta_coefficients: Tuple[float, ...]
    shift_coefficients: Tuple[float, ...]


@dataclass(frozen=True)
class ConeEquivalenceInput:
    """
    The homotopy-commutative square A′ → B′ over A″ → B″ with vertical
    homotopy equivalences (ψ′, ψ″) and (φ′, φ″).

    Homotopies: φ′f′ − f″ψ′ = [d, h′], ψ″ψ′ − id = [d, k′],
    ψ′ψ″ − id = [d, k″], φ″φ′ − id = [d, r′], φ′φ″ − id = [d, r″].
    Every map carries its declared shift in ``.shift``.
    """
    f_prime: FilteredMap
    f_second: FilteredMap
    psi_prime: FilteredMap
    psi_second: FilteredMap
    phi_prime: FilteredMap
    phi_second: FilteredMap
    h_prime: FilteredLinearMap
    k_prime: FilteredLinearMap
    k_second: FilteredLinearMap
    r_prime: FilteredLinearMap
    r_second: FilteredLinearMap

    @property
    def input_shift_sum(self) -> float:
        return sum(
            m.shift
            for m in (
                self.f_prime, self.f_second, self.phi_prime, self.phi_second,
                self.psi_prime, self.psi_second, self.h_prime, self.k_prime,
                self.k_second, self.r_prime, self.r_second,
            )
        )


@dataclass(frozen=True)
class ConeEquivalenceResult:
    """Cone maps, homotopies and their measured shifts."""
    cone_prime: FilteredComplex
    cone_second: FilteredComplex
    varphi_prime: FilteredMap
    varphi_second: FilteredMap
    H_prime: FilteredLinearMap
    H_second: FilteredLinearMap
    h_second: FilteredLinearMap
    measured_shifts: Mapping[str, float] = field(hash=False)
    input_shift_sum: float = 0.0

    @property
    def max_ratio(self) -> float:
        """Largest measured shift divided by the sum of input shifts."""
        worst = max(self.measured_shifts.values(), default=0.0)
        if worst <= 0:
            return 0.0
        if self.input_shift_sum <= 0:
            return INF
        return worst / self.input_shift_sum


class Suite(str, Enum):
    """Campaign suites; ALL runs every other suite with its default count."""
    ORACLE = "oracle"
    CONE = "cone"
    QUASIEQ = "quasieq"
    MAP_DEPTH = "map_depth"
    HOMOTOPY_DIFF = "homotopy_diff"
    TENSOR = "tensor"
    REFILTER = "refilter"
    REASSOC = "reassoc"
    ITERATED = "iterated"
    CONE_EQUIV = "cone_equiv"
    ALL = "all"


class InstanceStatus(str, Enum):
    """Outcome of a single campaign instance."""
    PASSED = "passed"
    FAILED = "failed"
    VACUOUS = "vacuous"
    ERROR = "error"


class CampaignStatus(str, Enum):
    """Overall outcome of a campaign."""
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass(frozen=True)
class InequalityCheck:
    """
    One evaluated (in)equality ``lhs <relation> rhs``.

    ``vacuous`` marks a side that is ±inf (or undefined); such checks are
    never counted as passes of the finite-form statement.
    """
    name: str
    lhs: ExtendedReal
    rhs: ExtendedReal
    relation: str
    holds: bool
    vacuous: bool = False
    slack: Optional[float] = None


@dataclass
class InstanceRecord:
    """Everything recorded about one campaign instance."""
    index: int
    seed: Optional[int]
    label: str
    status: InstanceStatus = InstanceStatus.PASSED
    checks: List[InequalityCheck] = field(default_factory=list)
    log: List[Dict[str, Any]] = field(default_factory=list)
    metrics: Dict[str, Any] = field(default_factory=dict)
    error_message: Optional[str] = None

    def is_successful(self) -> bool:
        return self.status in (InstanceStatus.PASSED, InstanceStatus.VACUOUS)


@dataclass
class CampaignReport:
    """Summary of a campaign across all instances."""
    suite: str
    seed: int
    count: int
    tolerance: float
    status: CampaignStatus = CampaignStatus.COMPLETED
    records: List[InstanceRecord] = field(default_factory=list)
    metrics: Dict[str, Any] = field(default_factory=dict)
    children: List["CampaignReport"] = field(default_factory=list)

    def _all_records(self) -> List[InstanceRecord]:
        if self.children:
            return [r for child in self.children for r in child._all_records()]
        return self.records

    def _count(self, status: InstanceStatus) -> int:
        return sum(1 for r in self._all_records() if r.status == status)

    @property
    def total_instances(self) -> int:
        return len(self._all_records())

    @property
    def passed(self) -> int:
        return self._count(InstanceStatus.PASSED)

    @property
    def failed(self) -> int:
        return self._count(InstanceStatus.FAILED)

    @property
    def vacuous(self) -> int:
        return self._count(InstanceStatus.VACUOUS)

    @property
    def errors(self) -> int:
        return self._count(InstanceStatus.ERROR)

    @property
    def vacuous_checks(self) -> int:
        return sum(1 for r in self._all_records() for c in r.checks if c.vacuous)

    @property
    def success_rate(self) -> float:
        """Share of successful instances as a percentage."""
        if self.total_instances == 0:
            return 0.0
        ok = sum(1 for r in self._all_records() if r.is_successful())
        return ok / self.total_instances * 100

    @property
    def worst_slack(self) -> Optional[float]:
        """Smallest slack over all finite inequality checks."""
        slacks = [
            c.slack for r in self._all_records() for c in r.checks
            if c.slack is not None and not c.vacuous
        ]
        return min(slacks) if slacks else None

    def failures(self) -> List[InstanceRecord]:
        return [r for r in self._all_records() if not r.is_successful()]

    def is_successful(self) -> bool:
        return self.status == CampaignStatus.COMPLETED


@dataclass(frozen=True)
class TrialRecord:
    """One theorem-demo trial."""
    seed: int
    rho: ExtendedReal
    beta_max: float
    bound: float
    holds: bool
    fiber_betas: Tuple[float, ...] = ()


@dataclass
class TheoremDemoReport:
    """Constants (A, B) and the per-trial outcome of the synthetic demo."""
    A: float
    B: float
    r: int
    constants: BoundConstants
    trials: List[TrialRecord] = field(default_factory=list)
    caveat: str = ""

    @property
    def passed(self) -> int:
        return sum(1 for t in self.trials if t.holds)

    def is_successful(self) -> bool:
        return self.passed == len(self.trials)


@dataclass
class ProbeReport:
    """Census of the literal and corrected forms of the homotopy estimate."""
    count: int
    seed: int
    literal_violations: int
    corrected_violations: int
    counterexample: Dict[str, Any] = field(default_factory=dict)
    campaign: Optional[CampaignReport] = None


@dataclass
class ComparisonReport:
    """Profiles of two related complexes and the bounds checked between them."""
    first: InvariantProfile
    second: InvariantProfile
    checks: List[InequalityCheck] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

"""
Pydantic models for campaign and demo configuration and for the JSON
documents read by the command line.

These models validate user input before anything is computed and document
the accepted fields through their JSON schema.
"""

from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .models import Suite

DEFAULT_COUNTS: Dict[Suite, int] = {
    Suite.ORACLE: 500,
    Suite.CONE: 1000,
    Suite.QUASIEQ: 300,
    Suite.MAP_DEPTH: 200,
    Suite.HOMOTOPY_DIFF: 500,
    Suite.TENSOR: 300,
    Suite.REFILTER: 200,
    Suite.REASSOC: 200,
    Suite.ITERATED: 1000,
    Suite.CONE_EQUIV: 100,
}

DEFAULT_GRID = [x / 2 for x in range(13)]


class CampaignConfig(BaseModel):
    """Configuration of a randomized verification campaign."""

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {"suite": "cone", "count": 1000, "seed": 1, "tolerance": 1e-9}
        },
    )

    suite: Suite = Field(..., description="Suite to run; 'all' runs every suite")
    count: Optional[int] = Field(None, description="Instances per suite; defaults to the suite's own count")
    seed: int = Field(0, ge=0, description="Campaign seed; instance seeds derive from it")
    tolerance: float = Field(1e-9, description="Slack allowed on finite inequality comparisons")
    max_generators: int = Field(8, ge=1, description="Largest random complex size")
    max_r: int = Field(5, ge=1, description="Largest number of cone attachments")
    halt_on_failure: bool = Field(
        True, description="Stop a theorem-backed suite at its first failed instance and report its seed"
    )
    filtration_grid: List[float] = Field(
        default_factory=lambda: list(DEFAULT_GRID), description="Filtration values random complexes draw from"
    )

    @field_validator("count")
    @classmethod
    def validate_count(cls, v):
        if v is not None and v < 1:
            raise ValueError("count must be at least 1")
        return v

    @field_validator("tolerance")
    @classmethod
    def validate_tolerance(cls, v):
        if v <= 0:
            raise ValueError("tolerance must be positive")
        return v

    @field_validator("filtration_grid")
    @classmethod
    def validate_grid(cls, v):
        if not v:
            raise ValueError("filtration_grid cannot be empty")
        return sorted(v)

    def count_for(self, suite: Suite) -> int:
        return self.count if self.count is not None else DEFAULT_COUNTS[suite]

    def for_suite(self, suite: Suite) -> "CampaignConfig":
        """The same configuration pointed at a single suite."""
        return self.model_copy(update={"suite": suite, "count": self.count_for(suite)})


class TheoremDemoConfig(BaseModel):
    """Configuration of the synthetic iterated-cone demo."""

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={"example": {"k": 3, "trials": 100, "seed": 17, "tail_beta_cap": 1.0}},
    )

    k: int = Field(3, ge=1, description="Number of sphere factors")
    fiber_beta_range: Tuple[float, float] = Field((0.0, 1.0), description="Range of fiber bar lengths")
    fiber_sigma_spread: float = Field(0.5, ge=0, description="Largest offset between fiber spectral invariants")
    fiber_bars: int = Field(2, ge=0, description="Largest number of finite bars per fiber")
    shift_cap: float = Field(1.0, ge=0, description="Largest stage shift")
    tail_beta_cap: float = Field(1.0, ge=0, description="Boundary depth cap of the acyclic tail")
    trials: int = Field(100, ge=1, description="Number of trials")
    seed: int = Field(17, ge=0, description="Seed for fibers and tails")
    fixture_seed: int = Field(0, ge=0, description="Seed for the fixed inter-sphere complexes and shifts")

    @field_validator("fiber_beta_range")
    @classmethod
    def validate_range(cls, v):
        low, high = v
        if low < 0 or high < low:
            raise ValueError("fiber_beta_range must be an ordered pair of non-negative numbers")
        return v


class GeneratorEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str = Field(..., min_length=1, description="Generator id, unique within the complex")
    filtration: float = Field(..., description="Filtration value")


class ComplexDocument(BaseModel):
    """A filtered complex as a JSON document."""

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "name": "I(1,4)",
                "generators": [{"id": "x", "filtration": 1}, {"id": "y", "filtration": 4}],
                "boundary": {"y": ["x"]},
            }
        },
    )

    name: str = Field(..., description="Complex name")
    generators: List[GeneratorEntry] = Field(default_factory=list, description="Generators in declared order")
    boundary: Dict[str, List[str]] = Field(default_factory=dict, description="Support of d per generator")

    @model_validator(mode="after")
    def validate_ids(self):
        ids = [g.id for g in self.generators]
        duplicates = sorted({g for g in ids if ids.count(g) > 1})
        if duplicates:
            raise ValueError(f"duplicate generator ids: {duplicates}")
        known = set(ids)
        for source, support in self.boundary.items():
            if source not in known:
                raise ValueError(f"boundary given for unknown generator '{source}'")
            for target in support:
                if target not in known:
                    raise ValueError(f"unknown generator '{target}' in boundary of '{source}'")
        return self


ComplexRef = Union[ComplexDocument, str]


class MapPart(BaseModel):
    model_config = ConfigDict(extra="forbid")

    shift: float = Field(0.0, ge=0, description="Declared admissible shift")
    matrix: Dict[str, List[str]] = Field(default_factory=dict, description="Image support per source generator")


class MapDocument(MapPart):
    """A filtered map; source and target are inline documents or file paths."""

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "source": {"name": "P(1)", "generators": [{"id": "a", "filtration": 1}]},
                "target": {"name": "P(0)", "generators": [{"id": "b", "filtration": 0}]},
                "shift": 0,
                "matrix": {"a": ["b"]},
            }
        },
    )

    source: ComplexRef = Field(..., description="Source complex or path")
    target: ComplexRef = Field(..., description="Target complex or path")


class ReassocDocument(BaseModel):
    """
    Input of the reassociation check: E, F, G, the inner map f: F → G and
    g: E → [F → G]. Ids of the inner cone are ``a/<F id>`` and G's ids.
    """

    model_config = ConfigDict(extra="forbid")

    E: ComplexRef
    F: ComplexRef
    G: ComplexRef
    f: MapPart
    g: MapPart

"""
Filtered Cones

Filtered chain complexes over F2: barcodes, spectral invariants, boundary
depth, mapping cones, iterated cones and tensor products, with a seeded
randomized verifier for the estimates relating them.
"""

from .models import (
    Bar,
    Barcode,
    CampaignReport,
    CampaignStatus,
    ConeInput,
    FilteredComplex,
    FilteredLinearMap,
    FilteredMap,
    HomotopyEquivalenceWitness,
    InstanceStatus,
    InvariantProfile,
    IteratedConeSpec,
    Suite,
)
from .complex import validate_complex, validate_map, shift_complex, direct_sum
from .persistence import barcode, persistence_rank
from .invariants import profile, profile_oracle, map_boundary_depth, aggregate
from .cones import mapping_cone, refilter_cone, reassociate, iterated_cone, iterated_bound, tensor_product
from .equivalence import cone_equivalence
from .campaign import CampaignRunner, run_campaign, homotopy_diff_probe
from .config import CampaignConfig, TheoremDemoConfig
from .context import CampaignContext
from .demo import theorem_demo
from .registry import SuiteRegistry, suite, get_registry
from .suite import BaseSuite
from .exceptions import (
    FilteredAlgebraError,
    ValidationError,
    InvalidComplexError,
    InvalidMapError,
    ShiftError,
    DegenerateValueError,
    ConeConstructionError,
    ConeEquivalenceError,
    ConfigurationError,
    SuiteNotFoundError,
    ParseError,
)

__version__ = "1.0.0"
__all__ = [
    # Domain types
    "Bar",
    "Barcode",
    "FilteredComplex",
    "FilteredLinearMap",
    "FilteredMap",
    "HomotopyEquivalenceWitness",
    "ConeInput",
    "IteratedConeSpec",
    "InvariantProfile",
    # Operations
    "validate_complex",
    "validate_map",
    "shift_complex",
    "direct_sum",
    "barcode",
    "persistence_rank",
    "profile",
    "profile_oracle",
    "map_boundary_depth",
    "aggregate",
    "mapping_cone",
    "refilter_cone",
    "reassociate",
    "iterated_cone",
    "iterated_bound",
    "tensor_product",
    "cone_equivalence",
    "theorem_demo",
    # Verifier
    "CampaignRunner",
    "CampaignContext",
    "CampaignConfig",
    "TheoremDemoConfig",
    "CampaignReport",
    "BaseSuite",
    "SuiteRegistry",
    "get_registry",
    "run_campaign",
    "homotopy_diff_probe",
    # Enums
    "Suite",
    "InstanceStatus",
    "CampaignStatus",
    # Decorators
    "suite",
    # Exceptions
    "FilteredAlgebraError",
    "ValidationError",
    "InvalidComplexError",
    "InvalidMapError",
    "ShiftError",
    "DegenerateValueError",
    "ConeConstructionError",
    "ConeEquivalenceError",
    "ConfigurationError",
    "SuiteNotFoundError",
    "ParseError",
]

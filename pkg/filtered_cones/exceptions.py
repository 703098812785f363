"""
Custom exceptions for the filtered cones toolkit.
"""

from typing import List, Optional


class FilteredAlgebraError(Exception):
    """Base exception for all filtered-algebra errors."""
    pass


class ValidationError(FilteredAlgebraError):
    """Raised when a complex, map or witness fails its axioms."""

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        super().__init__(message)
        self.violations = list(violations or [])


class InvalidComplexError(ValidationError):
    """Raised when a filtered complex violates d∘d = 0 or monotonicity."""
    pass


class InvalidMapError(ValidationError):
    """Raised when a filtered map is not a chain map or not s-filtered."""
    pass


class ShiftError(FilteredAlgebraError):
    """Raised when a shift is negative or below the admissible minimum."""
    pass


class DegenerateValueError(FilteredAlgebraError):
    """Raised on (+inf) + (-inf) and other undefined extended-real input."""
    pass


class ConeConstructionError(FilteredAlgebraError):
    """Raised when an iterated cone stage does not match its partial cone."""

    def __init__(self, message: str, stage: int):
        super().__init__(message)
        self.stage = stage


class ConeEquivalenceError(FilteredAlgebraError):
    """Raised when an identity of the cone-equivalence square fails."""

    def __init__(self, message: str, identity: str):
        super().__init__(message)
        self.identity = identity


class ConfigurationError(FilteredAlgebraError):
    """Raised when a campaign or demo configuration is invalid."""
    pass


class SuiteNotFoundError(FilteredAlgebraError):
    """Raised when no suite is registered under a name."""
    pass


class ParseError(FilteredAlgebraError):
    """Raised when a complex, map or reassociation document cannot be parsed."""
    pass

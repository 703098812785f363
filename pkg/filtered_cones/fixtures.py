"""
Small named complexes used throughout tests, suites and the CLI.

P(a) is one cycle at filtration a, I(b, d) is x@b, y@d with d(y) = x,
Z is the empty complex.
"""

from .complex import fmt
from .models import FilteredComplex


def point(a: float, generator_id: str = "g") -> FilteredComplex:
    """P(a)."""
    return FilteredComplex.build(f"P({fmt(a)})", [(generator_id, a)])


def interval(b: float, d: float, low: str = "x", high: str = "y") -> FilteredComplex:
    """I(b, d): a bar [b, d) carried by two generators."""
    if b > d:
        raise ValueError(f"interval needs b <= d, got {b} > {d}")
    return FilteredComplex.build(f"I({fmt(b)},{fmt(d)})", [(low, b), (high, d)], {high: [low]})


def empty(name: str = "Z") -> FilteredComplex:
    """Z."""
    return FilteredComplex.build(name, [])

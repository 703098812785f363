from pathlib import Path

import numpy as np
import pytest

from filtered_cones.complex import chain_map
from filtered_cones.fixtures import empty, interval, point

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def bar_1_4():
    return interval(1, 4)


@pytest.fixture
def two_points():
    """P(0) ⊕ P(2) with ids g0, g2."""
    from filtered_cones.complex import direct_sum

    return direct_sum(point(0, "g0"), point(2, "g2"))


@pytest.fixture
def p1_to_p0():
    """The identity-on-F2 map P(1) → P(0), a ↦ b."""
    return chain_map(point(1, "a"), point(0, "b"), np.array([[1]]), 0.0)


@pytest.fixture
def zero_complex():
    return empty()

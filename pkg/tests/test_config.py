import pytest
from pydantic import ValidationError

from filtered_cones.config import (
    DEFAULT_COUNTS,
    CampaignConfig,
    ComplexDocument,
    MapDocument,
    TheoremDemoConfig,
)
from filtered_cones.models import Suite


def test_campaign_defaults():
    config = CampaignConfig(suite="cone")
    assert config.suite == Suite.CONE
    assert config.count_for(Suite.CONE) == 1000
    assert config.tolerance == 1e-9
    assert config.filtration_grid[0] == 0.0
    assert config.halt_on_failure


def test_default_counts_cover_every_suite():
    assert set(DEFAULT_COUNTS) == {s for s in Suite if s != Suite.ALL}
    assert DEFAULT_COUNTS[Suite.ITERATED] == 1000


def test_explicit_count_applies_to_every_suite():
    config = CampaignConfig(suite="all", count=7)
    child = config.for_suite(Suite.TENSOR)
    assert child.suite == Suite.TENSOR
    assert child.count == 7

    kept = CampaignConfig(suite="all", halt_on_failure=False).for_suite(Suite.CONE)
    assert kept.halt_on_failure is False


@pytest.mark.parametrize(
    "fields",
    [
        {"count": 0},
        {"tolerance": 0},
        {"seed": -1},
        {"filtration_grid": []},
        {"unknown": 1},
    ],
)
def test_invalid_campaign_config(fields):
    with pytest.raises(ValidationError):
        CampaignConfig(suite="cone", **fields)


def test_unknown_suite_is_rejected():
    with pytest.raises(ValidationError):
        CampaignConfig(suite="nope")


def test_demo_config():
    config = TheoremDemoConfig()
    assert (config.k, config.trials, config.seed) == (3, 100, 17)
    with pytest.raises(ValidationError):
        TheoremDemoConfig(k=0)
    with pytest.raises(ValidationError):
        TheoremDemoConfig(fiber_beta_range=(1.0, 0.5))
    with pytest.raises(ValidationError):
        TheoremDemoConfig(tail_beta_cap=-1)


def test_complex_document_names_unknown_id():
    with pytest.raises(ValidationError, match="'z'"):
        ComplexDocument.model_validate(
            {"name": "bad", "generators": [{"id": "y", "filtration": 0}], "boundary": {"y": ["z"]}}
        )


def test_complex_document_rejects_duplicates():
    with pytest.raises(ValidationError, match="duplicate"):
        ComplexDocument.model_validate(
            {"name": "bad", "generators": [{"id": "y", "filtration": 0}, {"id": "y", "filtration": 1}]}
        )


def test_map_document_accepts_paths():
    doc = MapDocument.model_validate({"source": "a.json", "target": "b.json", "shift": 0.5, "matrix": {}})
    assert doc.source == "a.json"
    assert doc.shift == 0.5

from collections import Counter

import pytest

from filtered_cones.campaign import instance_seed, run_campaign
from filtered_cones.config import CampaignConfig
from filtered_cones.context import CampaignContext
from filtered_cones.models import InstanceRecord, InstanceStatus, Suite
from filtered_cones.registry import get_registry
from filtered_cones.suites import HomotopyDiffSuite, IteratedSuite, OracleSuite, TensorSuite

PROVEN = [
    Suite.ORACLE,
    Suite.CONE,
    Suite.QUASIEQ,
    Suite.MAP_DEPTH,
    Suite.HOMOTOPY_DIFF,
    Suite.TENSOR,
    Suite.REFILTER,
    Suite.REASSOC,
    Suite.ITERATED,
]


def _check(suite_cls, instance):
    record = InstanceRecord(index=-1, seed=None, label="fixture")
    suite_cls().check(instance, CampaignContext(suite_cls().name, record))
    return record


@pytest.mark.parametrize("suite", PROVEN, ids=lambda s: s.value)
def test_suite_campaign_passes(suite):
    report = run_campaign(CampaignConfig(suite=suite, count=12, seed=2024))
    assert report.errors == 0, [r.error_message for r in report.failures()]
    assert report.failed == 0, [(r.label, [c.name for c in r.checks if not c.holds]) for r in report.failures()]
    assert report.is_successful()


@pytest.mark.parametrize("suite", list(Suite)[:-1], ids=lambda s: s.value)
def test_fixtures_pass(suite):
    suite_cls = get_registry().get(suite.value)
    for label, instance in suite_cls().fixtures():
        record = _check(suite_cls, instance)
        assert all(c.holds for c in record.checks), (label, [c.name for c in record.checks if not c.holds])


def test_oracle_fixture_on_empty_complex_is_exact():
    record = _check(OracleSuite, dict(OracleSuite().fixtures())["Z"])
    sigma = next(c for c in record.checks if c.name == "sigma+ barcode vs oracle")
    assert not sigma.vacuous and sigma.holds


def test_cone_campaign_records_attained_bound():
    report = run_campaign(CampaignConfig(suite="cone", count=1, seed=0))
    record = next(r for r in report.records if r.label == "P(0)→I(1,4), f=0")
    attained = [c for c in record.checks if c.name == "cone sigma- lower bound attained"]
    assert len(attained) == 1
    assert attained[0].holds and (attained[0].lhs, attained[0].rhs) == (0.0, 0.0)
    other = next(r for r in report.records if r.label == "P(1)→P(0), s=0")
    assert not any(c.name.endswith("attained") for c in other.checks)


def test_tensor_fixtures_compare_barcodes():
    for _, pair in TensorSuite().fixtures():
        record = _check(TensorSuite, pair)
        assert any(c.name == "tensor barcode" and c.holds for c in record.checks)


def test_homotopy_counterexample_summary():
    summary = HomotopyDiffSuite.counterexample_summary()
    assert summary["source"] == "P(0)"
    assert summary["target"] == "I(0,2)"
    assert (summary["literal_bound"], summary["corrected_bound"]) == (0.0, 2.0)


def test_iterated_campaign_splits_evenly_over_r():
    config = CampaignConfig(suite="iterated", count=10, seed=1, max_generators=4)
    report = run_campaign(config)
    per_r = Counter(r.metrics["r"] for r in report.records if r.index >= 0)
    assert per_r == {r: 2 for r in range(1, config.max_r + 1)}


def test_iterated_draw_takes_r_from_position():
    config = CampaignConfig(suite="iterated", count=1000, seed=1)
    suite = IteratedSuite()
    assert [suite.draw(i, instance_seed(1, i), config).r for i in range(7)] == [1, 2, 3, 4, 5, 1, 2]
    assert 1 <= suite.generate(3, config).r <= config.max_r


def test_cone_equiv_campaign_records_ratio():
    report = run_campaign(CampaignConfig(suite="cone_equiv", count=5, seed=11))
    assert report.errors == 0
    assert report.metrics["candidate_constant"] == 3.0
    assert report.metrics["max_ratio"] >= 0.0
    assert all("shifts" in r.metrics for r in report.records if r.status != InstanceStatus.ERROR)


def test_oracle_campaign_records_reading():
    report = run_campaign(CampaignConfig(suite="oracle", count=10, seed=1))
    readings = report.metrics["bars_reading"]
    assert set(readings) == {"sigma_plus", "sigma_minus"}
    assert "min-birth" not in readings["sigma_plus"]

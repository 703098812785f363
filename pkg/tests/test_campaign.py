import logging
import math

from filtered_cones import checks
from filtered_cones.campaign import CampaignRunner, homotopy_diff_probe, instance_seed, run_campaign
from filtered_cones.config import CampaignConfig
from filtered_cones.context import CampaignContext
from filtered_cones.models import CampaignStatus, InstanceRecord, InstanceStatus, Suite
from filtered_cones.registry import SuiteRegistry
from filtered_cones.suite import BaseSuite


class FlakySuite(BaseSuite):
    """Raises on odd seeds, fails on seeds divisible by 3, passes otherwise."""
    name = "cone"

    def fixtures(self):
        return [("vacuous", None)]

    def generate(self, seed, config):
        if seed % 2:
            raise RuntimeError("odd seed")
        return seed

    def check(self, seed, ctx):
        if seed is None:
            ctx.record_check(checks.at_most("unbounded", math.inf, 0.0))
            return
        ctx.record_check(checks.truth("not divisible by 3", seed % 3 != 0))


class StoppingSuite(FlakySuite):
    def on_instance_error(self, record, error, ctx):
        return False


def _registry(cls):
    registry = SuiteRegistry()
    registry.register("cone", cls)
    return registry


def test_instance_seed_is_deterministic():
    assert instance_seed(1, 0) == instance_seed(1, 0)
    assert instance_seed(1, 0) != instance_seed(1, 1)
    assert instance_seed(1, 0) != instance_seed(2, 0)


def test_runner_isolates_errors():
    config = CampaignConfig(suite="cone", count=20, seed=5, halt_on_failure=False)
    report = CampaignRunner(_registry(FlakySuite)).run(config)

    assert len(report.records) == 21
    fixture = report.records[0]
    assert (fixture.index, fixture.seed, fixture.status) == (-1, None, InstanceStatus.VACUOUS)

    for record in report.records[1:]:
        assert record.seed == instance_seed(5, record.index)
        if record.seed % 2:
            assert record.status == InstanceStatus.ERROR
            assert record.error_message == "RuntimeError: odd seed"
        elif record.seed % 3 == 0:
            assert record.status == InstanceStatus.FAILED
        else:
            assert record.status == InstanceStatus.PASSED

    assert report.errors > 0
    assert report.status == CampaignStatus.FAILED
    assert not report.is_successful()
    assert report.vacuous == 1
    assert all(not r.is_successful() for r in report.failures())


def test_runner_halts_on_first_failure():
    config = CampaignConfig(suite="cone", count=50, seed=5)
    report = CampaignRunner(_registry(FlakySuite)).run(config)
    last = report.records[-1]
    assert last.status == InstanceStatus.FAILED
    assert report.failed == 1
    assert all(r.status != InstanceStatus.FAILED for r in report.records[:-1])
    assert report.metrics["halted_at"] == {"index": last.index, "seed": last.seed, "label": last.label}
    assert last.seed == instance_seed(5, last.index)
    assert report.status == CampaignStatus.FAILED


def test_runner_keeps_going_for_conjectural_suites():
    class ConjecturalSuite(FlakySuite):
        theorem_backed = False

    config = CampaignConfig(suite="cone", count=20, seed=5)
    report = CampaignRunner(_registry(ConjecturalSuite)).run(config)
    assert len(report.records) == 21
    assert "halted_at" not in report.metrics


def test_runner_stops_when_hook_says_so():
    config = CampaignConfig(suite="cone", count=50, seed=5, halt_on_failure=False)
    report = CampaignRunner(_registry(StoppingSuite)).run(config)
    assert report.records[-1].status == InstanceStatus.ERROR
    assert report.errors == 1


def test_context_logs_into_record(caplog):
    record = InstanceRecord(index=0, seed=3, label="x#0")
    ctx = CampaignContext("x", record, logger=logging.getLogger("test"))
    with caplog.at_level(logging.WARNING, logger="test"):
        ctx.record_check(checks.truth("broken", False))
    assert record.log[0]["message"] == "check failed: broken"
    assert record.log[0]["details"]["seed"] == 3
    assert "[x] check failed: broken" in caplog.text
    ctx.set_metric("m", 1)
    ctx.set_metadata("k", "v")
    assert record.metrics == {"m": 1}
    assert ctx.get_metadata("k") == "v"
    assert ctx.get_metadata("missing", 0) == 0


def test_cone_campaign_is_reproducible():
    config = CampaignConfig(suite="cone", count=15, seed=1)
    first, second = run_campaign(config), run_campaign(config)
    assert first.is_successful()
    assert [(r.seed, r.status) for r in first.records] == [(r.seed, r.status) for r in second.records]
    assert [c.lhs for r in first.records for c in r.checks if not c.vacuous] == [
        c.lhs for r in second.records for c in r.checks if not c.vacuous
    ]


def test_all_runs_every_suite():
    report = run_campaign(CampaignConfig(suite="all", count=2, seed=3, max_generators=4))
    assert [c.suite for c in report.children] == [s.value for s in Suite if s != Suite.ALL]
    assert report.total_instances == sum(c.total_instances for c in report.children)
    assert report.errors == 0


def test_homotopy_diff_probe():
    probe = homotopy_diff_probe(count=20, seed=0)
    assert probe.corrected_violations == 0
    assert probe.literal_violations >= 1
    assert probe.counterexample["depth"] == 2.0
    assert probe.counterexample["literal_holds"] is False
    assert probe.counterexample["corrected_holds"] is True
    assert probe.campaign.is_successful()

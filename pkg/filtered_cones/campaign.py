"""
Campaign runner for randomized verification.

This is the main entry point of the verifier, providing methods to:
- Run one suite or every suite for a seed
- Derive reproducible instance seeds
- Probe the literal and corrected homotopy estimates
"""

import logging
from typing import Any, Callable, Optional

import numpy as np

from .config import CampaignConfig
from .context import CampaignContext
from .models import (
    CampaignReport,
    CampaignStatus,
    InstanceRecord,
    InstanceStatus,
    ProbeReport,
    Suite,
)
from .registry import SuiteRegistry, get_registry
from .suite import BaseSuite

logger = logging.getLogger(__name__)


def instance_seed(campaign_seed: int, index: int) -> int:
    """Seed of instance ``index``; reproduces the instance on its own."""
    return int(np.random.SeedSequence([campaign_seed, index]).generate_state(1)[0])


class CampaignRunner:
    """
    Runs suites instance by instance with per-instance error isolation.

    A raising instance is recorded with its seed and the campaign continues.
    A failed instance of a theorem-backed suite stops the suite when
    ``halt_on_failure`` is set; its seed is kept in ``metrics["halted_at"]``.
    """

    def __init__(self, registry: Optional[SuiteRegistry] = None, logger: Optional[logging.Logger] = None):
        self.registry = registry or get_registry()
        self.logger = logger or logging.getLogger(__name__)

    def run(self, config: CampaignConfig) -> CampaignReport:
        """
        Run a campaign.

        Returns:
            The campaign report; for ``all`` it holds one child report per suite
        """
        if config.suite != Suite.ALL:
            return self._run_suite(config)

        report = CampaignReport(suite=Suite.ALL.value, seed=config.seed, count=0, tolerance=config.tolerance)
        for suite in Suite:
            if suite == Suite.ALL:
                continue
            child = self._run_suite(config.for_suite(suite))
            report.children.append(child)
            report.count += child.count
            if not child.is_successful():
                report.status = CampaignStatus.FAILED
        return report

    def _run_suite(self, config: CampaignConfig) -> CampaignReport:
        suite_class = self.registry.get(config.suite.value)
        suite: BaseSuite = suite_class()
        count = config.count_for(config.suite)
        report = CampaignReport(suite=suite.name, seed=config.seed, count=count, tolerance=config.tolerance)

        self.logger.info(f"Starting campaign {suite.name} with {count} instances (seed {config.seed})")
        suite.on_campaign_start(report, config)

        proceed = True
        for position, (label, instance) in enumerate(suite.fixtures()):
            record = InstanceRecord(index=-1 - position, seed=None, label=label)
            proceed = self._check(suite, report, record, config, lambda inst=instance: inst)
            if not proceed:
                break

        for index in range(count if proceed else 0):
            seed = instance_seed(config.seed, index)
            record = InstanceRecord(index=index, seed=seed, label=f"{suite.name}#{index}")
            if not self._check(suite, report, record, config, lambda i=index, s=seed: suite.draw(i, s, config)):
                break

        suite.on_campaign_complete(report)
        if report.failed or report.errors:
            report.status = CampaignStatus.FAILED

        self.logger.info(
            f"Campaign {suite.name} finished: {report.passed} passed, {report.failed} failed, "
            f"{report.vacuous} vacuous, {report.errors} errors"
        )
        return report

    def _check(
        self,
        suite: BaseSuite,
        report: CampaignReport,
        record: InstanceRecord,
        config: CampaignConfig,
        build: Callable[[], Any],
    ) -> bool:
        """Generate and check one instance; returns False to stop the campaign."""
        report.records.append(record)
        ctx = CampaignContext(suite.name, record, config.tolerance, self.logger)
        try:
            instance = build()
            suite.check(instance, ctx)
        except Exception as e:
            record.status = InstanceStatus.ERROR
            record.error_message = f"{type(e).__name__}: {e}"
            self.logger.warning(f"Instance {record.label} raised (seed {record.seed}): {e}")
            return suite.on_instance_error(record, e, ctx)

        if any(not c.holds for c in record.checks):
            record.status = InstanceStatus.FAILED
            self.logger.warning(f"Instance {record.label} failed; reproduce with seed {record.seed}")
            if suite.theorem_backed and config.halt_on_failure:
                report.metrics["halted_at"] = {"index": record.index, "seed": record.seed, "label": record.label}
                self.logger.error(f"Halting {suite.name} at {record.label}; reproduce with seed {record.seed}")
                return False
        elif record.checks and all(c.vacuous for c in record.checks):
            record.status = InstanceStatus.VACUOUS
        else:
            record.status = InstanceStatus.PASSED
        return True


def run_campaign(config: CampaignConfig, registry: Optional[SuiteRegistry] = None) -> CampaignReport:
    """Run a campaign with the default runner."""
    return CampaignRunner(registry).run(config)


def homotopy_diff_probe(count: int, seed: int, tolerance: float = 1e-9) -> ProbeReport:
    """
    Census of the literal min-form and the corrected max-form of the
    homotopy estimate over ``count`` random instances plus the
    deterministic counterexample.
    """
    from .suites import HomotopyDiffSuite

    config = CampaignConfig(suite=Suite.HOMOTOPY_DIFF, count=count, seed=seed, tolerance=tolerance)
    report = run_campaign(config)
    return ProbeReport(
        count=count,
        seed=seed,
        literal_violations=report.metrics.get("literal_min_form_violations", 0),
        corrected_violations=report.failed,
        counterexample=HomotopyDiffSuite.counterexample_summary(),
        campaign=report,
    )

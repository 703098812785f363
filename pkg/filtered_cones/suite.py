"""
Base suite class for implementing verification campaigns.
"""

import re
from abc import ABC, abstractmethod
from typing import Any, List, Optional, Tuple

from .config import CampaignConfig
from .context import CampaignContext
from .models import CampaignReport, InstanceRecord


class BaseSuite(ABC):
    """
    Abstract base class for campaign suites.

    Convention: suites are named like `MapDepthSuite` for a suite name of
    `map_depth`. The name is derived from the class name unless set
    explicitly.
    """

    # Override in subclass to set the registered name explicitly
    name: Optional[str] = None

    # Proven checks; with halt_on_failure the first failed instance stops the run
    theorem_backed: bool = True

    def __init__(self):
        if not self.name:
            class_name = self.__class__.__name__
            if class_name.endswith("Suite"):
                class_name = class_name[:-5]
            self.name = self._camel_to_snake(class_name)

    @staticmethod
    def _camel_to_snake(name: str) -> str:
        """Convert CamelCase to snake_case."""
        s1 = re.sub('(.)([A-Z][a-z]+)', r'\1_\2', name)
        return re.sub('([a-z0-9])([A-Z])', r'\1_\2', s1).lower()

    def fixtures(self) -> List[Tuple[str, Any]]:
        """
        Deterministic instances checked before the random ones.

        Returns:
            (label, instance) pairs
        """
        return []

    @abstractmethod
    def generate(self, seed: int, config: CampaignConfig) -> Any:
        """
        Build one random instance from its seed.

        Args:
            seed: Instance seed, enough to reproduce the instance
            config: Campaign configuration (size caps, grid)

        Returns:
            The instance handed to check()
        """
        pass

    def draw(self, index: int, seed: int, config: CampaignConfig) -> Any:
        """
        Build the random instance at position ``index`` of a campaign.

        Suites that stratify a campaign by position override this; the
        default ignores the index.
        """
        return self.generate(seed, config)

    @abstractmethod
    def check(self, instance: Any, ctx: CampaignContext) -> None:
        """
        Evaluate every property of the suite on one instance and record the
        results through ``ctx.record_check``.
        """
        pass

    def on_campaign_start(self, report: CampaignReport, config: CampaignConfig):
        """Hook called before the first instance."""
        pass

    def on_campaign_complete(self, report: CampaignReport):
        """Hook called after the last instance; may add report metrics."""
        pass

    def on_instance_error(self, record: InstanceRecord, error: Exception, ctx: CampaignContext) -> bool:
        """
        Hook called when generating or checking an instance raises.

        Returns:
            True to continue with the remaining instances, False to stop
        """
        ctx.error(f"Error in instance {record.index}: {error}", {"seed": record.seed})
        return True

"""
Campaign context provides the recording environment for one suite instance.
"""

import logging
from typing import Any, Dict, Iterable, List, Optional

from .checks import DEFAULT_TOLERANCE
from .models import InequalityCheck, InstanceRecord


class CampaignContext:
    """
    Execution context handed to a suite while it checks one instance.

    The context encapsulates:
    - the instance record that ends up in the campaign report
    - logging tied to the suite and instance
    - the tolerance for finite comparisons
    - free-form metrics and metadata shared between hooks
    """

    def __init__(
        self,
        suite_name: str,
        record: InstanceRecord,
        tolerance: float = DEFAULT_TOLERANCE,
        logger: Optional[logging.Logger] = None,
    ):
        self.suite_name = suite_name
        self.record = record
        self.tolerance = tolerance
        self.logger = logger or logging.getLogger(__name__)
        self._metadata: Dict[str, Any] = {}

    def log(self, level: str, message: str, details: Optional[Dict[str, Any]] = None):
        """
        Log a message associated with the current instance.

        The entry is kept in the instance record and mirrored to the Python logger.

        Args:
            level: Log level (debug, info, warning, error)
            message: Log message
            details: Optional structured details
        """
        self.record.log.append({"level": level, "message": message, "details": details or {}})
        log_method = getattr(self.logger, level.lower(), self.logger.info)
        log_method(f"[{self.suite_name}] {message}", extra={"details": details or {}})

    def info(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.log("info", message, details)

    def warning(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.log("warning", message, details)

    def error(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.log("error", message, details)

    def debug(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.log("debug", message, details)

    def record_check(self, check: InequalityCheck) -> InequalityCheck:
        """Attach an evaluated check to the instance; failing checks are logged."""
        self.record.checks.append(check)
        if not check.holds:
            self.warning(
                f"check failed: {check.name}",
                {"lhs": check.lhs, "rhs": check.rhs, "relation": check.relation, "seed": self.record.seed},
            )
        return check

    def record_checks(self, checks: Iterable[InequalityCheck]) -> List[InequalityCheck]:
        return [self.record_check(check) for check in checks]

    def set_metric(self, key: str, value: Any):
        """Set a metric reported with the instance."""
        self.record.metrics[key] = value

    def set_metadata(self, key: str, value: Any):
        self._metadata[key] = value

    def get_metadata(self, key: str, default: Any = None) -> Any:
        return self._metadata.get(key, default)

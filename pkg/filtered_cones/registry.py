"""
Convention-based suite registry.

Suites register themselves with the ``@suite`` decorator; the registry maps
suite names to suite classes for the campaign runner.
"""

import importlib
import inspect
import logging
from typing import Dict, Type

from .exceptions import SuiteNotFoundError
from .suite import BaseSuite

logger = logging.getLogger(__name__)


class SuiteRegistry:
    """
    Registry for campaign suites.

    The registry supports:
    - Manual registration via register()
    - Discovery of BaseSuite subclasses in a module via discover()
    - Lookup by suite name
    """

    def __init__(self):
        self._suites: Dict[str, Type[BaseSuite]] = {}

    def register(self, name: str, suite_class: Type[BaseSuite]) -> None:
        """
        Register a suite class under a name.

        Args:
            name: The suite name
            suite_class: The suite class to register
        """
        if not issubclass(suite_class, BaseSuite):
            raise ValueError(f"{suite_class.__name__} must inherit from BaseSuite")
        self._suites[name] = suite_class

    def get(self, name: str) -> Type[BaseSuite]:
        """
        Get the suite class registered under a name.

        Raises:
            SuiteNotFoundError: If no suite is registered under the name
        """
        if name not in self._suites:
            raise SuiteNotFoundError(
                f"No suite registered under: {name}. "
                f"Available suites: {', '.join(sorted(self._suites))}"
            )
        return self._suites[name]

    def has(self, name: str) -> bool:
        return name in self._suites

    def list_suites(self) -> list:
        return list(self._suites.keys())

    def discover(self, module_name: str) -> int:
        """
        Register every BaseSuite subclass defined in a module under its
        derived name.

        Returns:
            Number of suites registered
        """
        module = importlib.import_module(module_name)
        count = 0
        for _, obj in inspect.getmembers(module, inspect.isclass):
            if issubclass(obj, BaseSuite) and obj is not BaseSuite and obj.__module__ == module.__name__:
                instance = obj()
                if instance.name:
                    self.register(instance.name, obj)
                    count += 1
        logger.debug("discovered %d suites in %s", count, module_name)
        return count


# Global registry instance
_default_registry = SuiteRegistry()


def get_registry() -> SuiteRegistry:
    """Get the default global suite registry, loading the built-in suites."""
    from . import suites  # noqa: F401  registers the built-in suites

    return _default_registry


def suite(name: str):
    """
    Decorator to register a suite under a name.

    Example:
        >>> @suite('tensor')
        ... class TensorSuite(BaseSuite):
        ...     def check(self, instance, ctx):
        ...         ...
    """

    def decorator(cls: Type[BaseSuite]) -> Type[BaseSuite]:
        _default_registry.register(name, cls)
        return cls

    return decorator

import pytest

from filtered_cones.exceptions import SuiteNotFoundError
from filtered_cones.registry import SuiteRegistry, get_registry
from filtered_cones.suite import BaseSuite
from filtered_cones.models import Suite

BUILT_IN = {s.value for s in Suite if s != Suite.ALL}


class MapDepthExtraSuite(BaseSuite):
    def generate(self, seed, config):
        return seed

    def check(self, instance, ctx):
        pass


class Named(BaseSuite):
    name = "explicit"

    def generate(self, seed, config):
        return seed

    def check(self, instance, ctx):
        pass


def test_name_is_derived_from_class_name():
    assert MapDepthExtraSuite().name == "map_depth_extra"
    assert Named().name == "explicit"


def test_default_registry_has_every_suite():
    registry = get_registry()
    assert BUILT_IN <= set(registry.list_suites())
    for name in BUILT_IN:
        assert registry.get(name)().name == name


def test_register_and_lookup():
    registry = SuiteRegistry()
    registry.register("extra", MapDepthExtraSuite)
    assert registry.has("extra")
    assert registry.get("extra") is MapDepthExtraSuite


def test_register_rejects_non_suites():
    with pytest.raises(ValueError):
        SuiteRegistry().register("bad", object)


def test_unknown_suite_lists_available():
    registry = SuiteRegistry()
    registry.register("extra", MapDepthExtraSuite)
    with pytest.raises(SuiteNotFoundError, match="extra"):
        registry.get("missing")


def test_discover_finds_built_in_suites():
    registry = SuiteRegistry()
    assert registry.discover("filtered_cones.suites") == len(BUILT_IN)
    assert set(registry.list_suites()) == BUILT_IN

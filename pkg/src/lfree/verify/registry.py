"""Suite registry for the verification batteries."""

import logging
from collections.abc import Callable
from typing import Any

from lfree.config import OracleConfig
from lfree.errors import UnknownSuiteError
from lfree.models import CellOutcome, VerifyReport
from lfree.verify.base import BaseSuite

logger = logging.getLogger(__name__)


class SuiteRegistry:
    """Registry of verification suites by name."""

    def __init__(self):
        self._suites: dict[str, BaseSuite] = {}

    def register(self, suite: BaseSuite) -> None:
        """Register a suite under its name."""
        self._suites[suite.name] = suite
        logger.debug(f"Registered suite {suite.name}")

    def get_suite(self, name: str) -> BaseSuite:
        """Get a suite by name."""
        suite = self._suites.get(name)
        if suite is None:
            known = ", ".join(self.names)
            raise UnknownSuiteError(f"unknown suite {name!r}; known suites: {known}")
        return suite

    def has_suite(self, name: str) -> bool:
        return name in self._suites

    @property
    def names(self) -> list[str]:
        """Registered suite names in registration order."""
        return list(self._suites.keys())


_default_registry: SuiteRegistry | None = None


def get_suite_registry() -> SuiteRegistry:
    """Get the default suite registry with all suites registered."""
    global _default_registry

    if _default_registry is None:
        _default_registry = SuiteRegistry()

        from lfree.verify.suites import ALL_SUITES

        for suite_class in ALL_SUITES:
            _default_registry.register(suite_class())

    return _default_registry


def get_suite(name: str) -> BaseSuite:
    """Convenience function to get a suite by name."""
    return get_suite_registry().get_suite(name)


def verify_suite(
    name: str,
    grid: str | None = None,
    workers: int = 1,
    oracle: OracleConfig | None = None,
    on_result: Callable[[CellOutcome], Any] | None = None,
) -> VerifyReport:
    """Run a named suite over a grid, or over its default grid."""
    return get_suite(name).run(grid, workers=workers, oracle=oracle, on_result=on_result)

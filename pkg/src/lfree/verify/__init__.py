"""Verification suites that check the closed forms against exhaustive search."""

from lfree.verify.base import BaseSuite
from lfree.verify.registry import SuiteRegistry, get_suite, get_suite_registry, verify_suite

__all__ = [
    "BaseSuite",
    "SuiteRegistry",
    "get_suite",
    "get_suite_registry",
    "verify_suite",
]

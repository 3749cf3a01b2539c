"""
Registry of verification suites run by the ``verify`` verb.
"""

import logging
from collections.abc import Callable

logger = logging.getLogger(__name__)

SUITE_KINDS = ("symbolic", "stochastic")


class SuiteRegistry:
    """
    Registry to keep track of every verification suite by name.
    """

    def __init__(self):
        self._suites: dict[str, type] = {}
        self._kinds: dict[str, str] = {}

    def register(self, name: str, suite_cls: type, kind: str = "symbolic"):
        """Register a suite class."""
        if kind not in SUITE_KINDS:
            raise ValueError(f"Unknown suite kind {kind!r}")
        self._suites[name] = suite_cls
        self._kinds[name] = kind
        logger.debug(f"Registered {kind} suite: {name}")

    def get_suite(self, name: str) -> type | None:
        """Get a registered suite class."""
        return self._suites.get(name)

    def list_suites(self, kind: str | None = None) -> dict[str, type]:
        """List registered suites, optionally of one kind, in registration order."""
        return {
            name: cls
            for name, cls in self._suites.items()
            if kind is None or self._kinds[name] == kind
        }


# Global suite registry
suite_registry = SuiteRegistry()


def verification_suite(name: str, kind: str = "symbolic") -> Callable[[type], type]:
    """
    Decorator to register a suite class in the global registry.

    Usage:
        @verification_suite("forest")
        class ForestSuite(VerificationSuite):
            def execute(self):
                ...
    """

    def decorator(cls: type) -> type:
        cls.suite_name = name
        suite_registry.register(name, cls, kind)
        return cls

    return decorator

"""
Base class and runner for verification suites.
"""

import logging
import time
from collections.abc import Iterable

from ..config import RunConfig, bound_scope
from ..decorators import suite_registry
from ..exceptions import BranchedError, ConfigurationError

logger = logging.getLogger(__name__)


class VerificationSuite:
    """
    A named group of checks. Subclasses implement ``execute`` and record
    outcomes through ``check`` and ``warn``; a suite passes when it has no
    errors.
    """

    suite_name = "unnamed"

    def __init__(self, config: RunConfig | None = None):
        self.config = config or RunConfig.from_settings()
        self.errors: list[str] = []
        self.warnings: list[str] = []
        self.details: dict = {}
        self.checks = 0

    def execute(self) -> None:
        raise NotImplementedError

    def check(self, condition: bool, message: str) -> bool:
        """Count one check and record ``message`` as an error if it failed."""
        self.checks += 1
        if not condition:
            self.errors.append(message)
        return bool(condition)

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def run(self) -> dict:
        started = time.perf_counter()
        logger.info(f"Running suite {self.suite_name}")
        try:
            with bound_scope(self.config.bound):
                self.execute()
        except BranchedError as e:
            self.errors.append(f"{type(e).__name__}: {e}")
        elapsed = time.perf_counter() - started
        logger.info(
            f"Suite {self.suite_name} finished in {elapsed:.2f}s "
            f"with {len(self.errors)} errors"
        )
        return self._get_results_summary(elapsed)

    def _get_results_summary(self, elapsed: float = 0.0) -> dict:
        return {
            "passed": not self.errors,
            "checks": self.checks,
            "errors": self.errors,
            "warnings": self.warnings,
            "details": self.details,
            "seconds": round(elapsed, 3),
        }


def run_suites(names: Iterable[str], config: RunConfig | None = None) -> dict[str, dict]:
    """
    Run suites by name, in the given order.

    Raises:
        ConfigurationError: a name is not registered
    """
    results = {}
    for name in names:
        suite_cls = suite_registry.get_suite(name)
        if suite_cls is None:
            raise ConfigurationError(f"Unknown suite {name!r}")
        results[name] = suite_cls(config).run()
    return results

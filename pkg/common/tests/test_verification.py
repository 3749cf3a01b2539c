import pytest

from common.decorators.suites import SuiteRegistry
from common.exceptions import ConfigurationError, GridError
from common.services.verification import VerificationSuite, run_suites


class _Failing(VerificationSuite):
    suite_name = "failing"

    def execute(self):
        self.check(True, "never recorded")
        self.check(False, "recorded")
        self.warn("noted")


class _Raising(VerificationSuite):
    suite_name = "raising"

    def execute(self):
        raise GridError("off grid")


def test_check_records_only_failures(run_config):
    # Act
    result = _Failing(run_config).run()

    # Assert
    assert result["passed"] is False
    assert result["checks"] == 2
    assert result["errors"] == ["recorded"]
    assert result["warnings"] == ["noted"]


def test_library_errors_become_suite_errors(run_config):
    # Act
    result = _Raising(run_config).run()

    # Assert
    assert result["passed"] is False
    assert result["errors"] == ["GridError: off grid"]


def test_registry_filters_by_kind():
    # Arrange
    registry = SuiteRegistry()
    registry.register("a", _Failing)
    registry.register("b", _Raising, kind="stochastic")

    # Act / Assert
    assert list(registry.list_suites("stochastic")) == ["b"]
    assert registry.get_suite("a") is _Failing
    assert registry.get_suite("c") is None


def test_registry_rejects_unknown_kind():
    with pytest.raises(ValueError):
        SuiteRegistry().register("a", _Failing, kind="numeric")


def test_run_suites_unknown_name(run_config):
    with pytest.raises(ConfigurationError):
        run_suites(["no-such-suite"], run_config)

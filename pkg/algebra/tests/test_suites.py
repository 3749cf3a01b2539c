import pytest

from common.config import RunConfig
from common.constants import SYMBOLIC_SUITES
from common.services.verification import run_suites


@pytest.mark.slow
@pytest.mark.parametrize("name", SYMBOLIC_SUITES)
def test_symbolic_suite_passes_at_bound_four(name):
    # Arrange
    config = RunConfig(bound=4)

    # Act
    result = run_suites([name], config)[name]

    # Assert
    assert result["errors"] == []
    assert result["checks"] > 0

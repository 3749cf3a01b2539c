import pytest

from common.config import RunConfig
from common.services.verification import run_suites


@pytest.mark.slow
@pytest.mark.parametrize("name", ["chen", "quasigeo", "regularity"])
def test_grid_suites_pass(name):
    # Arrange
    config = RunConfig(seed=3)

    # Act
    result = run_suites([name], config)[name]

    # Assert
    assert result["errors"] == []
    assert result["checks"] > 0

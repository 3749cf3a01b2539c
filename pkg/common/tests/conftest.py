import pytest

from common.config import RunConfig


@pytest.fixture
def run_config():
    """Defaults with a small bound for fast suites"""
    return RunConfig(bound=3, mc_trials=2, workers=1)


@pytest.fixture
def config_file(tmp_path):
    """A flat KEY=value file as accepted by --config"""
    path = tmp_path / "branched.env"
    path.write_text("BOUND=4\nTOL=1e-6\nFORMAT=json\nSEED=11\n")
    return path

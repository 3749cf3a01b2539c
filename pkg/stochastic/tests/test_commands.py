import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from common.constants import EXIT_USAGE


def run(*args) -> str:
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


def test_simulate_json_report():
    # Act
    payload = json.loads(run("stoch", "simulate", "--n", "64", "--pair", "0", "0.5", "--format", "json"))

    # Assert
    assert payload["kind"] == "II"
    assert len(payload["X"]) == 65
    assert payload["X"][0] == 0.0
    (pair,) = payload["pairs"]
    assert pair["π([[]] [[]])"] == pytest.approx(0.5 / 3)
    assert len(pair["generators"]) == 8


def test_simulate_writes_a_file(tmp_path):
    # Arrange
    target = tmp_path / "lift.json"

    # Act
    out = run("stoch", "simulate", "--kind", "SS", "--n", "32", "--out", str(target))

    # Assert
    assert "Wrote SS lift" in out
    assert json.loads(target.read_text())["pairs"][0]["π([[]] [[]])"] == pytest.approx(0.0)


def test_simulate_rejects_bad_resolution():
    with pytest.raises(CommandError) as excinfo:
        run("stoch", "simulate", "--n", "48")
    assert excinfo.value.returncode == EXIT_USAGE


def test_simulate_rejects_off_grid_pair():
    with pytest.raises(CommandError) as excinfo:
        run("stoch", "simulate", "--n", "64", "--pair", "0", "0.3")
    assert excinfo.value.returncode == EXIT_USAGE


@pytest.mark.slow
def test_verify_quasi_geometric_suite():
    assert "quasigeo" in run("stoch", "verify", "--suite", "quasigeo")

import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from algebra.services import order4
from algebra.structures.character import Character
from common.constants import EXIT_ASSERTION_FAILED, EXIT_USAGE


def run(*args) -> str:
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


def test_hopf_pi_text():
    assert run("hopf", "pi", "[] []").strip() == "[] [] − 2 [[]]"


def test_hopf_top_json():
    # Act
    payload = json.loads(run("hopf", "top", "[]", "[]", "--format", "json"))

    # Assert
    assert payload == {"terms": [{"coeff": "1", "word": ["[[]]"]}]}


def test_hopf_pair():
    assert run("hopf", "pair", "[] []", "[] []").strip() == "2"


def test_hopf_dim_rows():
    # Act
    rows = json.loads(run("hopf", "dim", "--n", "5", "--format", "json"))

    # Assert
    assert [row["dim"] for row in rows] == [1, 1, 1, 2, 3]


def test_parse_error_is_a_usage_error():
    with pytest.raises(CommandError) as excinfo:
        run("hopf", "pi", "[[]")
    assert excinfo.value.returncode == EXIT_USAGE


def test_bound_above_limit_is_a_usage_error():
    with pytest.raises(CommandError) as excinfo:
        run("hopf", "pi", "[]", "--bound", "7")
    assert excinfo.value.returncode == EXIT_USAGE


def test_weight_above_bound_is_a_usage_error():
    with pytest.raises(CommandError) as excinfo:
        run("hopf", "pi", "[] [] [] []", "--bound", "3")
    assert excinfo.value.returncode == EXIT_USAGE


def test_missing_expression_is_a_usage_error():
    with pytest.raises(CommandError) as excinfo:
        run("hopf", "pi")
    assert excinfo.value.returncode == EXIT_USAGE


def test_order4_rewrite():
    assert run("order4", "rewrite", "[[]]").strip() == "1/2 [] [] − 1/2 π([] [])"


def test_order4_generators_listing():
    # Act
    lines = run("order4", "generators").strip().splitlines()

    # Assert
    assert len(lines) == 8
    assert lines[0] == "X1 (weight 1): []"


def test_order4_extend_from_file(tmp_path):
    # Arrange
    path = tmp_path / "gens.json"
    path.write_text(json.dumps({str(i): v for i, v in enumerate([1.0, 0.0, 0, 0, 0, 0, 0, 0])}))

    # Act
    payload = json.loads(run("order4", "extend", "--gens", str(path), "--format", "json"))

    # Assert
    assert payload["values"]["[[]]"] == pytest.approx(0.5)


def test_ks_table():
    # Act
    output = run("ks", "table", "--n", "3")

    # Assert
    assert output.startswith("P_1 = x1")
    assert "P_2 = " in output


def test_ks_classical_passes():
    assert "residual" in run("ks", "classical", "--n", "3", "--steps", "64")


def test_check_geometric_smooth_character(character_file):
    # Arrange
    path = character_file(Character.smooth(0.4, bound=4).to_json())

    # Act
    output = run("check", "geometric", "--character", str(path))

    # Assert
    assert "PASS" in output


def test_check_quasi_geometric_failure_exit_code(character_file):
    # Arrange: Itô value of π([] []) ⊤ π([] []) on a unit interval with ΔW = 0
    gens = {i: 0.0 for i in range(8)}
    gens[5] = -0.5
    path = character_file(order4.extend_character(gens, (0.0, 1.0)).to_json())

    # Act / Assert
    with pytest.raises(CommandError) as excinfo:
        run("check", "quasi-geometric", "--character", str(path), "--tol", "1e-6")
    assert excinfo.value.returncode == EXIT_ASSERTION_FAILED


def test_check_missing_file(tmp_path):
    with pytest.raises(CommandError) as excinfo:
        run("check", "multiplicative", "--character", str(tmp_path / "none.json"))
    assert excinfo.value.returncode == EXIT_USAGE


def test_iso_obstructions_listing():
    lines = run("iso", "obstructions", "--bound", "4").strip().splitlines()
    assert len(lines) == 1


def test_prelie_table_has_rows():
    assert run("prelie", "davie", "--level", "2").strip()


def test_verify_lists_both_kinds():
    # Act
    output = run("verify", "list")

    # Assert
    assert "forest (symbolic)" in output
    assert "chen (stochastic)" in output


def test_verify_runs_one_suite():
    assert "PASS forest" in run("verify", "suite", "forest", "--bound", "4")

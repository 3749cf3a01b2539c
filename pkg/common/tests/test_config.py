import pytest

from common.config import RunConfig, bound_scope, check_weight, current_bound, parse_alphabet
from common.exceptions import BoundExceededError, ConfigurationError


def test_parse_alphabet_sorts_and_deduplicates():
    # Act
    alphabet = parse_alphabet("b, a,b")

    # Assert
    assert alphabet == ("a", "b")


def test_parse_alphabet_empty_means_undecorated():
    assert parse_alphabet("") == ("",)
    assert parse_alphabet([]) == ("",)


@pytest.mark.parametrize("raw", ["a,[b]", "1", "a b"])
def test_parse_alphabet_rejects_grammar_symbols(raw):
    with pytest.raises(ConfigurationError):
        parse_alphabet(raw)


def test_load_reads_config_file(config_file):
    # Act
    config = RunConfig.load(config_file)

    # Assert
    assert config.bound == 4
    assert config.tol == pytest.approx(1e-6)
    assert config.output_format == "json"
    assert config.seed == 11


def test_flags_override_config_file(config_file):
    # Act
    config = RunConfig.load(config_file, bound=2, seed=None, output_format="text")

    # Assert
    assert config.bound == 2
    assert config.seed == 11
    assert config.output_format == "text"


def test_load_missing_file_raises(tmp_path):
    with pytest.raises(ConfigurationError):
        RunConfig.load(tmp_path / "missing.env")


@pytest.mark.parametrize(
    "overrides",
    [
        {"bound": 7},
        {"bound": 0},
        {"tol": 0.0},
        {"mc_trials": 0},
        {"workers": 0},
        {"output_format": "yaml"},
        {"statistic": "median"},
    ],
)
def test_validation_rejects_bad_values(overrides):
    with pytest.raises(ConfigurationError):
        RunConfig.load(**overrides)


def test_bad_number_in_file_is_a_configuration_error(tmp_path):
    # Arrange
    path = tmp_path / "bad.env"
    path.write_text("BOUND=five\n")

    # Act / Assert
    with pytest.raises(ConfigurationError):
        RunConfig.load(path)


def test_bound_scope_is_restored_after_exit():
    # Arrange
    outer = current_bound()

    # Act
    with bound_scope(2) as bound:
        inside = current_bound()

    # Assert
    assert bound == 2
    assert inside == 2
    assert current_bound() == outer


def test_check_weight_uses_active_bound():
    with bound_scope(3):
        check_weight(3)
        with pytest.raises(BoundExceededError) as excinfo:
            check_weight(4)
    assert excinfo.value.weight == 4
    assert excinfo.value.bound == 3

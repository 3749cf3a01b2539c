import pytest

from algebra.services import hopf, morphisms
from algebra.services.expressions import parse_expression, parse_word
from algebra.structures.character import Character
from algebra.suites import IsoSuite
from common.config import RunConfig


def test_eulerian_on_small_forests():
    assert morphisms.eulerian(parse_expression("[[]]")) == parse_expression("[[]] − 1/2 [] []")
    assert morphisms.eulerian(parse_expression("[] []")).is_zero()


def test_eulerian_is_idempotent():
    # Arrange
    x = parse_expression("[[][]] + [] [[]]")

    # Act
    e = morphisms.eulerian(x)

    # Assert
    assert morphisms.eulerian(e) == e


def test_exp_inverts_log():
    # Arrange
    x = parse_expression("[[][]]")

    # Act
    logged = morphisms.log_iso(x)

    # Assert
    assert morphisms.exp_iso(logged) == x


def test_log_is_multiplicative(dot):
    # Arrange
    cherry = parse_expression("[[]]")

    # Act
    lhs = morphisms.log_iso(hopf.forest_product(dot, cherry))
    rhs = morphisms.shuffle(morphisms.log_iso(dot), morphisms.log_iso(cherry))

    # Assert
    assert lhs == rhs


def test_exp_of_two_letter_word():
    assert morphisms.exp_iso(parse_word("[a] | [b]")) == parse_expression(
        "[a] ⊤ [b] + 1/2 π([a] [b])"
    )


def test_exp_of_four_dots_carries_the_two_two_term():
    # Arrange
    word = parse_word(IsoSuite.EXP_DOTS[0])

    # Act
    image = morphisms.exp_iso(word)

    # Assert
    assert image == parse_expression(IsoSuite.EXP_DOTS[1])
    assert image - parse_expression(IsoSuite.PRINTED_EXP_DOTS) == parse_expression(
        "1/4 π([] []) ⊤ π([] []) + 1/2 π([[]] [[]])"
    )
    assert morphisms.log_iso(image) == hopf.pi_tensor(word)


@pytest.mark.slow
def test_iso_suite_reports_the_printed_four_dot_gap():
    # Act
    result = IsoSuite(RunConfig(bound=4)).run()

    # Assert
    assert not any("[] | [] | [] | []" in error for error in result["errors"])
    assert result["details"]["exp_dots_printed_gap"]


def test_hoffman_exp_and_log_are_inverse():
    # Arrange
    w = parse_word("[a] | [b] | [c]")

    # Act
    image = morphisms.hoffman_exp(w)

    # Assert
    assert morphisms.hoffman_log(image) == w
    assert morphisms.hoffman_diagram_defect(w).is_zero()


def test_top_inverse_is_not_multiplicative():
    # Act
    report = morphisms.failed_attempts(3)

    # Assert
    assert report["top_inverse_multiplicative"] is False
    assert not report["top_inverse_defect"].is_zero()


def test_obstruction_of_undecorated_order_four():
    # Act
    obstructions = morphisms.quasi_geometric_obstructions(4)

    # Assert
    assert len(obstructions) == 1
    assert hopf.max_weight(obstructions[0].element) == 4


def test_smooth_character_is_geometric():
    # Arrange
    character = Character.smooth(0.3, bound=4)

    # Act
    report = morphisms.check_character(character, tol=1e-12, geometric=True)

    # Assert
    assert report["verdict"] is True
    assert report["witnesses"] == []


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_primitive_basis_matches_dimension(n):
    assert len(morphisms.primitive_basis(n)) == hopf.primitive_dimension(n, 1)

import pytest

from algebra.services import order4
from algebra.services.expressions import parse_expression
from common.exceptions import CharacterError


def test_eight_generators_by_weight():
    # Act
    generators = order4.generators()

    # Assert
    assert len(generators) == 8
    assert [g.weight for g in generators] == [1, 2, 3, 3, 4, 4, 4, 4]


def test_monomials_span_every_forest():
    assert order4.generator_rank() == 17
    assert len(order4.change_of_basis()) == 17


def test_rewrite_of_the_cherry():
    # Act
    poly = order4.rewrite(parse_expression("[[]]"))

    # Assert
    assert order4.polynomial_text(poly) == "1/2 [] [] − 1/2 π([] [])"


@pytest.mark.parametrize("text", ["[[][]]", "[[[]]] []", "[[[][]]]", "π([[]] [[]])"])
def test_rewrite_round_trips_through_the_forest_basis(text):
    # Arrange
    x = parse_expression(text)

    # Act
    poly = order4.rewrite(x)

    # Assert
    assert order4.evaluate_polynomial(poly) == x


def test_reference_identities_hold():
    # Act
    results = order4.check_reference_identities()

    # Assert
    assert results["[[]]"] is True
    assert results["[[[]]]"] is True
    assert len(results) == 6
    assert all(results.values())


def test_cherry_pair_identity_holds():
    # Act
    cherry = order4.cherry_pair_identity()

    # Assert
    assert cherry["primitive"]
    assert cherry["holds"]
    assert cherry["lhs"] == cherry["rhs"]


def test_bases_have_expected_ranks():
    report = order4.basis_P4_Q3()
    assert report["p_rank"] == 5
    assert report["q_rank"] == 7


def test_extend_requires_all_generators():
    with pytest.raises(CharacterError):
        order4.extend_character({0: 1.0, 1: 0.5})


def test_extend_accepts_names_and_is_multiplicative():
    # Arrange
    values = dict(zip(order4.GENERATOR_NAMES, [0.4, 0.2, 0.0, 0.1, 0.0, -0.3, 0.0, 0.05], strict=True))

    # Act
    character = order4.extend_character(values, (0.0, 1.0))

    # Assert
    assert character.multiplicativity_defects(1e-12) == []
    assert character.evaluate(parse_expression("[]")) == pytest.approx(0.4)
    assert character.evaluate(parse_expression("[[]]")) == pytest.approx(0.5 * 0.4**2 - 0.5 * 0.2)


def test_unknown_generator_name():
    with pytest.raises(CharacterError):
        order4.extend_character({"[[]]": 1.0})

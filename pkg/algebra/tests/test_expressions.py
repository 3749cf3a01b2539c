from fractions import Fraction

import pytest

from algebra.services import hopf
from algebra.services.expressions import (
    format_lincomb,
    lincomb_json,
    parse_character,
    parse_expression,
    parse_forest,
    parse_word,
)
from algebra.structures.forest import Forest, Tree, enumerate_forests
from algebra.structures.lincomb import LinComb
from common.exceptions import ExpressionParseError, UnknownLabelError


def test_parse_single_tree(cherry_tree):
    assert parse_expression("[[]]") == LinComb.of(cherry_tree.as_forest())


def test_parse_bullet_and_coefficients():
    # Act
    x = parse_expression("2 • − 1/2 [] []")

    # Assert
    assert x[Forest([Tree()])] == 2
    assert x[Forest([Tree(), Tree()])] == Fraction(-1, 2)


def test_ascii_aliases_match():
    assert parse_expression("pi([] []) ^ []") == parse_expression("π([] []) ⊤ []")


def test_unit_and_parentheses():
    assert parse_expression("1") == LinComb.of(Forest.unit())
    assert parse_expression("([] + [[]]) []") == parse_expression("[] [] + [[]] []")


def test_parse_error_reports_position():
    with pytest.raises(ExpressionParseError) as excinfo:
        parse_expression("[[]")
    assert excinfo.value.position >= 0


def test_unknown_label():
    with pytest.raises(UnknownLabelError):
        parse_expression("[a[b]]", alphabet=("a",))


def test_parse_forest_requires_single_forest():
    assert parse_forest("[a] [b]").code == "[a] [b]"
    with pytest.raises(ExpressionParseError):
        parse_forest("[] + [[]]")


def test_parse_word_slots():
    # Act
    word = parse_word("[a] | [b]")

    # Assert
    assert word == LinComb.of((Forest([Tree("a")]), Forest([Tree("b")])))


def test_text_rendering_of_pi():
    assert format_lincomb(parse_expression("π([] [])")) == "[] [] − 2 [[]]"


def test_latex_rendering():
    assert format_lincomb(parse_expression("[] − 1/2 [[]]"), "latex") == (
        "\\bullet - \\frac{1}{2} [\\bullet]"
    )


def test_json_terms():
    assert lincomb_json(parse_expression("[] − 1/2 [[]]")) == {
        "terms": [{"coeff": "1", "word": ["[]"]}, {"coeff": "-1/2", "word": ["[[]]"]}]
    }


def test_parse_character_infers_bound():
    # Act
    character = parse_character({"values": {"[]": 1.0, "[] []": 1.0, "[[]]": 0.5}, "interval": [0, 1]})

    # Assert
    assert character.bound == 2
    assert character.interval == (0, 1)
    assert character[Forest([Tree()])] == 1.0


def test_printed_elements_parse_back():
    # Arrange
    elements = [hopf.pi(forest) for forest in enumerate_forests(4)]
    elements.append(hopf.ck_coproduct(parse_expression("[[][]]")))

    # Act
    printed = [format_lincomb(x) for x in elements[:-1]]
    tensor = format_lincomb(elements[-1])

    # Assert
    assert [parse_expression(text) for text in printed] == elements[:-1]
    assert parse_word(tensor) == elements[-1]

from fractions import Fraction

import pytest

from algebra.services import hopf, morphisms
from algebra.services.expressions import parse_expression, parse_word
from algebra.services.linalg import pair, tensor_pair
from algebra.structures.forest import Forest, Tree, forests_of_weight
from algebra.structures.lincomb import LinComb
from common.config import bound_scope
from common.exceptions import BoundExceededError


def test_top_of_two_nodes_is_the_cherry(dot):
    assert hopf.top(dot, dot) == parse_expression("[[]]")


def test_top_is_left_composed(dot):
    assert hopf.top(dot, dot, dot) == parse_expression("[[[]]]")


def test_natural_growth_averages_over_vertices(dot):
    # Act
    grown = hopf.natural_growth(dot, parse_expression("[] []"))

    # Assert
    assert grown == parse_expression("[[]] []")


def test_pi_of_two_nodes():
    assert hopf.pi(parse_expression("[] []")) == parse_expression("[] [] − 2 [[]]")


def test_pi_image_is_primitive():
    # Arrange
    x = parse_expression("[] [[]]")

    # Act
    image = hopf.pi(x)

    # Assert
    assert hopf.ck_coproduct(image, reduced=True).is_zero()
    assert hopf.pi(image) == image


def test_product_of_primitives_splits_by_top(dot):
    # Arrange
    square = parse_expression("[] []")

    # Act
    rebuilt = hopf.top(dot, dot) + hopf.top(dot, dot) + hopf.pi(square)

    # Assert
    assert rebuilt == square


def test_ck_coproduct_of_cherry(cherry_tree, unit):
    # Arrange
    cherry = cherry_tree.as_forest()
    leaf = Forest([Tree()])

    # Act
    coproduct = hopf.ck_coproduct(LinComb.of(cherry))

    # Assert
    assert coproduct == LinComb({(cherry, unit): 1, (unit, cherry): 1, (leaf, leaf): 1})


def test_counit(unit):
    assert hopf.counit(LinComb.of(unit, 3) + parse_expression("[] []")) == 3


def test_gl_product_of_nodes(dot):
    assert hopf.gl_product(dot, dot) == parse_expression("[] [] + [[]]")


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3)])
def test_primitive_dimensions(n, expected):
    assert hopf.primitive_dimension(n, 1) == expected
    assert hopf.primitive_rank(n) == expected


def test_primitive_dimension_two_labels():
    assert hopf.primitive_dimension(1, 2) == 2


def test_weight_five_polynomial_is_not_a_dimension():
    # Act
    printed = hopf.primitive_dimension_polynomial(5, 1)

    # Assert
    assert printed == Fraction(85, 30)
    assert printed != hopf.primitive_dimension(5, 1)


def test_pairing_uses_symmetry_factor():
    # Arrange
    x = parse_expression("[] []")

    # Act / Assert
    assert pair(x, x) == 2
    assert pair(parse_expression("[[]]"), x) == 0


@pytest.mark.parametrize("z", forests_of_weight(3))
def test_gl_product_is_dual_to_ck_coproduct(z, dot):
    # Arrange
    cherry = Forest([Tree("", [Tree()])])

    # Act
    left = pair(hopf.gl_product(dot, cherry), LinComb.of(z))
    right = tensor_pair(LinComb.of((Forest([Tree()]), cherry)), hopf.ck_coproduct(z))

    # Assert
    assert left == right


def test_top_inverse_inverts_top():
    # Arrange
    forest = parse_expression("[[][]]")

    # Act
    word = hopf.top_inverse(forest)

    # Assert
    assert hopf.top_word(word) == forest


def test_grading_by_primitiveness_sums_to_identity():
    # Arrange
    x = parse_expression("[] [[]]")

    # Act
    total = LinComb()
    for m in range(1, 4):
        total += hopf.pi_m(x, m)

    # Assert
    assert total == x


def test_shuffle_of_letters():
    # Arrange
    a, b = parse_word("[a]"), parse_word("[b]")

    # Act
    result = morphisms.shuffle(a, b)

    # Assert
    assert result == parse_word("[a] | [b] + [b] | [a]")


def test_bound_is_enforced():
    with bound_scope(3), pytest.raises(BoundExceededError):
        hopf.pi(parse_expression("[] [] [] []"))


def test_coefficients_stay_exact():
    x = hopf.pi(parse_expression("[] [] []"))
    assert all(isinstance(c, Fraction) for c in x.values())


def test_pi_star_of_the_ladder():
    assert hopf.pi_star(parse_expression("[[]]")) == -parse_expression("[] []")


def test_binf_product_of_two_letters():
    # Arrange
    dot = parse_word("[]")

    # Act
    product = hopf.binf_product(dot, dot)

    # Assert
    assert product == parse_word("π([] [])") + parse_word("2 [] | []")
    assert product == hopf.binf_product_closed(dot, dot)

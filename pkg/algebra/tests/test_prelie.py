import itertools
from fractions import Fraction

import pytest

from algebra.services import hopf, prelie
from algebra.services.expressions import parse_expression, parse_forest
from algebra.structures.forest import Tree
from algebra.structures.lincomb import LinComb


@pytest.fixture
def letters():
    return [LinComb.of(prelie.generator(Tree(s).as_forest()).as_forest()) for s in "abc"]


def test_graft_associator_is_symmetric(letters):
    # Arrange
    a, b, c = letters

    # Act
    left = prelie.graft(prelie.graft(a, b), c) - prelie.graft(a, prelie.graft(b, c))
    swapped = prelie.graft(prelie.graft(b, a), c) - prelie.graft(b, prelie.graft(a, c))

    # Assert
    assert left == swapped


def test_og_product_is_associative(letters):
    for a, b, c in itertools.product(letters, repeat=3):
        assert prelie.og_product(prelie.og_product(a, b), c) == prelie.og_product(
            a, prelie.og_product(b, c)
        )


def test_set_partition_formula_matches_og_product(letters):
    # Arrange
    xs = [prelie.graft(letters[0], letters[1]), letters[1], letters[2]]

    # Act
    product = prelie.og_many(*xs)

    # Assert
    assert product == prelie.star_symmetric(xs)


def test_f_bold_is_multiplicative_and_f_hat_grafts():
    # Arrange
    h, k = parse_forest("[]"), parse_forest("[[]]")

    # Act
    product = hopf.gl_product(h, k)

    # Assert
    assert prelie.f_bold(product) == prelie.og_product(prelie.f_bold(h), prelie.f_bold(k))
    assert prelie.f_hat(product) == prelie.brace(prelie.f_bold(h), prelie.f_hat(k))


def test_f_hat_single_node_part_is_grafting():
    # Arrange
    tree = Tree("a", [Tree("b")])

    # Act
    part = prelie.single_node_part(prelie.f_hat(tree.as_forest()))

    # Assert
    assert part == LinComb.of(prelie.as_vector_fields(tree).as_forest())


def test_f_bold_of_unit_is_unit():
    assert prelie.f_bold(LinComb.of(prelie.UNIT)) == LinComb.of(prelie.UNIT)


def test_davie_table_at_weight_two():
    # Arrange
    dot, dots, cherry = parse_forest("[]"), parse_forest("[] []"), parse_forest("[[]]")

    # Act
    table = prelie.davie_table(2)

    # Assert
    assert set(table) == {dot, dots, cherry}
    assert table[dot] == prelie.F(dot)
    assert table[dots] == Fraction(1, 2) * prelie.F(dots)
    assert table[cherry] == prelie.brace(prelie.F(dot), prelie.F(dot)) - prelie.F(dots)


def test_f_hat_of_a_labelled_cherry():
    # Arrange
    a, b = parse_forest("[a]"), parse_forest("[b]")

    # Act
    value = prelie.f_hat(parse_forest("[a[b]]"))

    # Assert
    assert value == prelie.brace(prelie.F(b), prelie.F(a)) - prelie.F(parse_forest("[a] [b]"))


def test_f_hat_of_a_labelled_ladder():
    # Arrange
    a, b, c = (prelie.F(parse_forest(f"[{s}]")) for s in "abc")
    half = Fraction(1, 2)
    pi_star_part = prelie.F(
        parse_expression("−1/2 [a] [b[c]] + 1/2 [a] [b] [c] + 1/2 [b] [a[c]]")
    )

    # Act
    value = prelie.f_hat(parse_forest("[a[b[c]]]"))

    # Assert
    assert value == (
        pi_star_part
        - prelie.brace(prelie.F(parse_forest("[b] [c]")), a)
        - half * prelie.brace(c, prelie.F(parse_forest("[a] [b]")))
        + prelie.brace(prelie.brace(c, b), a)
    )
    assert prelie.F(hopf.pi_star(parse_forest("[a[b[c]]]"))) == pi_star_part


def test_ito_table_at_weight_three():
    # Arrange
    dot, dots = parse_forest("[]"), parse_forest("[] []")
    f_dot, f_dots = prelie.F(dot), prelie.F(dots)

    # Act
    table = prelie.ito_table(3)

    # Assert
    assert table[dots] == f_dots + prelie.odot(f_dot, f_dot)
    assert table[parse_forest("[[]]")] == prelie.brace(f_dot, f_dot) - f_dots
    assert table[parse_forest("[] [] []")] == (
        prelie.F(parse_forest("[] [] []"))
        + 3 * prelie.odot(f_dot, f_dots)
        + prelie.odot(f_dot, f_dot, f_dot)
    )

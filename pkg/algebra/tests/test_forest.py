import pytest

from algebra.structures.forest import (
    Forest,
    Tree,
    enumerate_forests,
    forests_of_weight,
    rooted_tree_counts,
    sigma,
    tree_factorial,
    trees_of_weight,
)
from common.exceptions import BoundExceededError


def test_trees_are_canonical_and_interned():
    # Arrange
    leaf = Tree()
    cherry = Tree("", [leaf])

    # Act
    first = Tree("", [cherry, leaf])
    second = Tree("", [leaf, cherry])

    # Assert
    assert first is second
    assert first.code == "[[][[]]]"
    assert first.weight == 4


def test_forest_order_does_not_matter():
    leaf, cherry = Tree(), Tree("", [Tree()])
    assert Forest([leaf, cherry]) == Forest([cherry, leaf])
    assert Forest([leaf, cherry]).code == "[] [[]]"
    assert Forest.unit().code == "1"


def test_forest_is_immutable():
    with pytest.raises(AttributeError):
        Forest.unit().weight = 3


def test_tree_counts_follow_the_classical_sequence():
    assert rooted_tree_counts(6) == [1, 1, 2, 4, 9, 20]
    assert [len(trees_of_weight(n)) for n in range(1, 6)] == [1, 1, 2, 4, 9]


def test_forest_counts():
    assert [len(forests_of_weight(n)) for n in range(1, 6)] == [1, 2, 4, 9, 20]


def test_labelled_counts():
    # Act
    trees = trees_of_weight(2, ("a", "b"))

    # Assert
    assert len(trees) == 4
    assert len(forests_of_weight(1, ("a", "b"))) == 2


@pytest.mark.parametrize(
    "forest, expected",
    [
        (Forest([Tree()] * 3), 6),
        (Forest([Tree("", [Tree(), Tree()])]), 2),
        (Forest([Tree("a"), Tree("b")]), 1),
        (Forest([Tree("", [Tree()])] * 2), 2),
    ],
)
def test_symmetry_factor(forest, expected):
    assert sigma(forest) == expected


def test_tree_factorial():
    assert tree_factorial(Tree("", [Tree("", [Tree()])])) == 6
    assert tree_factorial(Tree("", [Tree(), Tree()])) == 3


def test_enumeration_is_capped():
    with pytest.raises(BoundExceededError):
        enumerate_forests(7)


def test_enumeration_with_unit():
    forests = enumerate_forests(2, include_unit=True)
    assert forests[0].is_unit
    assert len(forests) == 1 + 1 + 2

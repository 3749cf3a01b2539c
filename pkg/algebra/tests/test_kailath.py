from fractions import Fraction

import numpy as np
import pytest

from algebra.services import kailath
from algebra.structures.lincomb import LinComb


def test_second_polynomial():
    assert kailath.ks_P(2) == LinComb({(0, 1): 1, (2,): Fraction(-1, 2)})


@pytest.mark.parametrize("n", range(1, 6))
def test_substitution_and_recursion(n):
    assert kailath.ks_substitution_check(n)
    assert kailath.ks_recursion_check(n)


def test_branched_identities_for_a_node(dot):
    # Act
    report = kailath.branched_ks(dot, 3)

    # Assert
    assert report["expansion_defect"].is_zero()
    assert report["recursion_defect"].is_zero()
    assert report["pi_fixed"]


def test_classical_recursion_on_iterated_sums():
    # Arrange
    increments = np.random.default_rng([7, 2]).normal(0.0, 0.1, 64)

    # Act
    character = kailath.iterated_sums_character(increments, 4)

    # Assert
    for n in range(1, 5):
        assert kailath.classical_ks_check(character, 1, n) < 1e-8


def test_iterated_sums_on_one_node_is_the_total():
    increments = np.array([0.5, -0.25, 1.0])
    character = kailath.iterated_sums_character(increments, 2)
    assert character.evaluate(kailath.ladder_primitive(1)) == pytest.approx(1.25)

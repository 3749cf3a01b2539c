import numpy as np
import pytest

from common.exceptions import GridError
from stochastic.services import LiftKind, build_lift, sample_bm, sample_fbm
from stochastic.services.lifts import chen_check, random_triples, regularity_estimate

CHERRY = "π([[]] [[]])"


@pytest.mark.parametrize(
    ("kind", "ladder", "square", "quasi"),
    [
        ("SS", False, False, True),
        ("II", True, True, False),
        ("IS", True, False, True),
        ("SI", False, True, False),
    ],
)
def test_lift_kind_conventions(kind, ladder, square, quasi):
    kind = LiftKind(kind)
    assert (kind.ladder_ito, kind.square_ito, kind.quasi_geometric) == (ladder, square, quasi)


@pytest.mark.parametrize(("kind", "factor"), [("II", 1 / 3), ("SI", 1 / 3), ("SS", 0.0), ("IS", 0.0)])
def test_cherry_component(make_lift, kind, factor):
    # Arrange
    lift = make_lift(kind)

    # Act
    value = lift.evaluate(CHERRY, [0, 16], [64, 24])

    # Assert
    assert value.tolist() == pytest.approx([factor, factor * 0.125], abs=1e-12)


def test_stratonovich_square_is_half_the_squared_increment(make_lift):
    # Arrange
    lift = make_lift("SS")
    dw = lift.w.values[64] - lift.w.values[0]

    # Act
    generators = lift.generator_arrays([0], [64])[:, 0]

    # Assert
    assert generators[5] == pytest.approx(0.5 * dw**2)
    assert generators[2] == generators[4] == generators[6] == 0.0


def test_ito_ladder_differs_by_a_quarter_of_the_step(make_lift):
    # Act
    ito = make_lift("II").generator_arrays([8], [40])[7, 0]
    strat = make_lift("SI").generator_arrays([8], [40])[7, 0]

    # Assert
    assert ito - strat == pytest.approx(0.25 * 0.5)


def test_first_generators_are_the_increments(make_lift):
    # Arrange
    lift = make_lift("II")

    # Act
    values = lift.generator_arrays([16], [48])[:, 0]

    # Assert
    assert values[0] == pytest.approx(lift.x.values[48] - lift.x.values[16])
    assert values[1] == pytest.approx(lift.w.values[48] - lift.w.values[16])


def test_chen_relation_holds_on_the_grid(make_lift):
    # Arrange
    triples = random_triples(64, 10, np.random.default_rng(1))

    # Act
    worst = chen_check(make_lift("SI"), triples)

    # Assert
    assert max(worst.values()) <= 1e-9


def test_character_carries_its_interval(make_lift):
    # Act
    character = make_lift("II").character(0.25, 0.5)

    # Assert
    assert character.interval == (0.25, 0.5)


def test_vanishing_component_is_degenerate(make_lift):
    # Act
    estimate = regularity_estimate(make_lift("II"), "π([] [] [])")

    # Assert
    assert estimate["degenerate"]
    assert estimate["slope"] is None


def test_lift_rejects_mismatched_grids():
    with pytest.raises(GridError):
        build_lift("II", sample_fbm(32), sample_bm(64))


def test_reversed_pair_is_rejected(make_lift):
    with pytest.raises(GridError):
        make_lift("II").indices(0.5, 0.25)

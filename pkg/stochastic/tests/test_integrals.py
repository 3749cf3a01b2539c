import numpy as np
import pandas as pd
import pytest

from common.exceptions import ConfigurationError, GridError
from stochastic.services import ControlledTable, SmoothFunction, controlled_of_function, rough_integrate
from stochastic.services.integrals import (
    ITO,
    UNIT_SLOT,
    assess_integral_decay,
    local_expansion,
    slot_factor,
    verify_integral_identities,
)


@pytest.fixture
def unit_table():
    return ControlledTable({UNIT_SLOT: np.ones(65)})


def test_smooth_function_derivatives():
    # Arrange
    phi = SmoothFunction("x**2/2")
    values = np.array([0.0, 1.0, -2.0])

    # Act / Assert
    assert phi(values).tolist() == [0.0, 0.5, 2.0]
    assert phi(values, 1).tolist() == [0.0, 1.0, -2.0]
    assert phi(values, 2).tolist() == [1.0, 1.0, 1.0]
    assert phi(values, 3).tolist() == [0.0, 0.0, 0.0]


@pytest.mark.parametrize("expression", ["y", "x +* 2"])
def test_smooth_function_rejects_bad_expressions(expression):
    with pytest.raises(ConfigurationError):
        SmoothFunction(expression)


def test_controlled_table_of_a_quadratic(paths):
    # Arrange
    x, _ = paths

    # Act
    table = SmoothFunction("x**2/2").table(x)

    # Assert
    assert np.allclose(table["[]"], x.values)
    assert np.allclose(table["[] []"], 1.0)
    assert np.allclose(table["[] * []"], 1.0)
    assert not table["[] * ([] [])"].any()


def test_controlled_table_pads_missing_derivatives():
    # Act
    table = controlled_of_function([np.ones(3)])

    # Assert
    assert table.n == 2
    assert not table["[]"].any()


def test_controlled_table_rejects_unknown_slots():
    with pytest.raises(GridError):
        ControlledTable({UNIT_SLOT: np.ones(3), "[[]]": np.ones(3)})


def test_controlled_table_rejects_non_finite_values():
    with pytest.raises(GridError):
        ControlledTable({UNIT_SLOT: np.array([1.0, np.nan])})


@pytest.mark.parametrize(("slot", "factor"), [("1", 1.0), ("[]", 1.0), ("[] []", 0.5), ("[] * []", 1.0)])
def test_slot_factor(slot, factor):
    assert slot_factor(slot) == pytest.approx(factor)


def test_local_expansion_is_truncated_at_weight_four():
    assert len(local_expansion("π([] [] [] [])")) == 1
    assert len(local_expansion("[]")) == 8


def test_unknown_integrator():
    with pytest.raises(ConfigurationError):
        local_expansion("[[]]")


def test_unit_integrand_against_w(make_lift, unit_table):
    # Arrange
    lift = make_lift("II")

    # Act
    value = rough_integrate(unit_table, "π([] [])", lift, 0.0, 1.0, 8)

    # Assert
    assert value == pytest.approx(lift.w.values[-1] - lift.w.values[0])


def test_unit_integrand_against_the_vanishing_generator(make_lift, unit_table):
    assert rough_integrate(unit_table, "π([] [] [])", make_lift("SS"), 0.0, 1.0) == 0.0


@pytest.mark.parametrize(("kind", "expected"), [("II", 1.0), ("SI", 1.0), ("SS", 0.0), ("IS", 0.0)])
def test_unit_integrand_against_four_leaves(make_lift, unit_table, kind, expected):
    # Act
    value = rough_integrate(unit_table, "π([] [] [] [])", make_lift(kind), 0.0, 1.0, 16)

    # Assert
    assert value == pytest.approx(expected, abs=1e-12)


def test_empty_interval_integrates_to_zero(make_lift, unit_table):
    assert rough_integrate(unit_table, "[]", make_lift("II"), 0.5, 0.5) == 0.0


def test_blocks_must_divide_the_interval(make_lift, unit_table):
    with pytest.raises(GridError):
        rough_integrate(unit_table, "[]", make_lift("II"), 0.0, 1.0, 3)


def test_table_and_lift_share_a_grid(make_lift):
    with pytest.raises(GridError):
        rough_integrate(ControlledTable({UNIT_SLOT: np.ones(9)}), "[]", make_lift("II"), 0.0, 1.0)


def test_constant_integrand_matches_ito_exactly():
    # Act
    frame = verify_integral_identities(["II"], "1", trials=2, n=256, levels=(8, 32))

    # Assert
    ito = frame[frame["identity"] == ITO]
    assert len(ito) == 4
    assert ito["residual"].max() < 1e-12
    assert frame[frame["exact"]]["residual"].max() < 1e-12


def test_partitions_must_divide_the_grid():
    with pytest.raises(GridError):
        verify_integral_identities(["II"], "1", trials=1, n=256, levels=(3,))


def test_assessment_picks_the_better_alternative():
    # Arrange
    rows = [
        {"kind": "SI", "identity": "minus", "alternative": "sign", "blocks": b, "residual": r, "exact": False}
        for b, r in zip((32, 128, 512), (1.0, 0.5, 0.3), strict=True)
    ]
    rows += [
        {"kind": "SI", "identity": "plus", "alternative": "sign", "blocks": b, "residual": 2.0, "exact": False}
        for b in (32, 128, 512)
    ]
    rows.append({"kind": "SI", "identity": "zero", "alternative": "", "blocks": 32, "residual": 1e-3, "exact": True})

    # Act
    assessment = assess_integral_decay(pd.DataFrame(rows), 1e-9)

    # Assert
    assert assessment["matches"] == {"SI sign": "minus"}
    assert assessment["failures"] == ["SI: zero off by 1.000e-03"]

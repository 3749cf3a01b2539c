import numpy as np
import pytest

from common.exceptions import GridError
from stochastic.services import GridPath, PathKind, ito_sum, sample_bm, sample_fbm
from stochastic.services.sampling import renormalized_qv


def test_fbm_starts_at_zero_on_the_full_grid(paths):
    # Arrange
    x, w = paths

    # Assert
    assert len(x.values) == 65
    assert x.values[0] == 0.0
    assert w.values[0] == 0.0
    assert x.kind is PathKind.FBM14


def test_same_seed_gives_the_same_path():
    assert np.array_equal(sample_fbm(32, 1.0, 3).values, sample_fbm(32, 1.0, 3).values)
    assert np.array_equal(sample_bm(32, 1.0, 3).values, sample_bm(32, 1.0, 3).values)


def test_x_and_w_use_independent_streams():
    x, w = sample_fbm(32, 1.0, 3), sample_bm(32, 1.0, 3)
    assert not np.allclose(x.values[1:], w.values[1:])


def test_resolution_must_be_a_power_of_two():
    with pytest.raises(GridError):
        sample_fbm(48)


def test_off_grid_time_is_rejected(paths):
    # Arrange
    x, _ = paths

    # Act / Assert
    assert x.index_of(0.5) == 32
    with pytest.raises(GridError):
        x.index_of(0.3)


def test_coarsen_keeps_grid_values(paths):
    # Arrange
    x, _ = paths

    # Act
    coarse = x.coarsen(16)

    # Assert
    assert coarse.n == 16
    assert np.array_equal(coarse.values, x.values[::4])


def test_renormalized_qv_of_a_constant_path():
    # Arrange
    times = np.linspace(0.0, 1.0, 65)
    path = GridPath(times, np.zeros(65), 0, PathKind.FBM14)

    # Act
    value = renormalized_qv(path, 1.0, 16)

    # Assert
    assert value == pytest.approx(-4.0)


def test_ito_sum_of_one_is_the_increment(paths):
    # Arrange
    _, w = paths

    # Act
    value = ito_sum(np.ones(65), w, 0.25, 0.75)

    # Assert
    assert value == pytest.approx(w.values[48] - w.values[16])


def test_ito_sum_of_w_against_w(paths):
    # Arrange
    _, w = paths
    increments = np.diff(w.values)

    # Act
    value = ito_sum(w, w, 0.0, 1.0)

    # Assert
    assert value == pytest.approx(0.5 * (w.values[-1] ** 2 - np.sum(increments**2)))


def test_ito_sum_rejects_reversed_interval(paths):
    _, w = paths
    with pytest.raises(GridError):
        ito_sum(w, w, 0.75, 0.25)

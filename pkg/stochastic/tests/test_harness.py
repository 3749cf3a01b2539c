import pytest

from common.exceptions import GridError

from stochastic.services.harness import qv_table, run_trials, sampler_statistics


def test_run_trials_order_does_not_depend_on_workers():
    # Act
    inline = run_trials(lambda seed: seed % 1000, 7, 12, workers=1)
    threaded = run_trials(lambda seed: seed % 1000, 7, 12, workers=4)

    # Assert
    assert inline == threaded
    assert len(set(run_trials(lambda seed: seed, 7, 12))) == 12


def test_run_trials_needs_a_trial():
    with pytest.raises(ValueError):
        run_trials(lambda seed: seed, 0, 0)


def test_qv_table_has_one_row_per_time_and_partition():
    # Act
    table = qv_table(64, (0.5, 1.0), (4, 16), trials=3, master_seed=2)

    # Assert
    assert table.shape == (4, 6)
    assert list(table.columns) == ["t", "partition", "mean", "stderr", "variance", "variance_over_t"]
    assert (table["stderr"] >= 0).all()


def test_brownian_sampler_covariance():
    # Act
    stats = sampler_statistics("bm", points=4, samples=2000, master_seed=1)

    # Assert
    assert stats["entries"] == 10
    assert stats["passed"]


def test_unknown_sampler_kind():
    with pytest.raises(GridError):
        sampler_statistics("ou", points=4, samples=10)

"""
Seeded Monte Carlo fan-out and the sampler and quadratic-variation statistics.

Trial ``i`` always uses ``trial_seed(master, i)`` and results come back in
trial order, so reports do not depend on the number of workers.
"""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np
import pandas as pd
from scipy.stats import norm

from common.exceptions import GridError

from .sampling import (
    fbm_covariance,
    fbm_factor,
    renormalized_qv,
    sample_bm,
    sample_fbm,
    trial_seed,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

SAMPLER_POINTS = 16


def run_trials(fn: Callable[[int], T], master_seed: int, trials: int, workers: int = 1) -> list[T]:
    """
    Run ``fn(seed)`` for every trial seed.

    Args:
        fn: Pure function of the trial seed
        master_seed: Seed the per-trial seeds are derived from
        trials: Number of trials
        workers: Thread count; 1 runs inline

    Returns:
        Results in trial order
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    seeds = [trial_seed(master_seed, i) for i in range(trials)]
    if workers <= 1 or trials == 1:
        return [fn(seed) for seed in seeds]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, seeds))


def sampled_matrix(sampler: Callable, n: int, horizon: float, master_seed: int, samples: int, workers: int = 1) -> np.ndarray:
    """Values at ``t_1 .. t_n`` of ``samples`` independent paths, shape ``(samples, n)``."""
    paths = run_trials(lambda seed: sampler(n, horizon, seed).values[1:], master_seed, samples, workers)
    return np.vstack(paths)


def covariance_statistics(values: np.ndarray, expected: np.ndarray) -> dict:
    """
    Compare the empirical second moments of centred Gaussian samples with
    ``expected``.

    The standard error of entry ``(i, j)`` is
    ``sqrt((R_ii R_jj + R_ij²) / M)`` for ``M`` samples. The largest z-score
    is judged against a Bonferroni threshold over the distinct entries; the
    count of entries beyond 3 standard errors is reported alongside.
    """
    samples = values.shape[0]
    empirical = values.T @ values / samples
    diagonal = np.diag(expected)
    stderr = np.sqrt((np.outer(diagonal, diagonal) + expected**2) / samples)
    z = np.abs(empirical - expected) / stderr
    upper = np.triu_indices_from(expected)
    distinct = len(upper[0])
    threshold = float(norm.isf(0.0005 / (2 * distinct)))
    return {
        "samples": samples,
        "max_z": float(np.max(z[upper])),
        "threshold": threshold,
        "beyond_3se": int(np.sum(z[upper] > 3.0)),
        "entries": distinct,
        "passed": bool(np.max(z[upper]) <= threshold),
    }


def sampler_statistics(
    kind: str = "fbm14",
    points: int = SAMPLER_POINTS,
    horizon: float = 1.0,
    samples: int = 20_000,
    master_seed: int = 0,
    workers: int = 1,
) -> dict:
    """Covariance check of the fBm or Brownian sampler on ``points`` grid times."""
    times = np.linspace(0.0, horizon, points + 1)[1:]
    if kind == "fbm14":
        fbm_factor(points, float(horizon))
        expected = fbm_covariance(times)
        sampler = sample_fbm
    elif kind == "bm":
        expected = np.minimum.outer(times, times)
        sampler = sample_bm
    else:
        raise GridError(f"Unknown path kind {kind!r}")
    values = sampled_matrix(sampler, points, horizon, master_seed, samples, workers)
    stats = covariance_statistics(values, expected)
    stats["kind"] = kind
    logger.info(f"Sampler {kind}: max z {stats['max_z']:.2f} against {stats['threshold']:.2f}")
    return stats


def qv_table(
    n: int,
    times: Sequence[float],
    partitions: Sequence[int],
    trials: int,
    master_seed: int = 0,
    workers: int = 1,
    horizon: float = 1.0,
) -> pd.DataFrame:
    """
    Renormalised quadratic variation across seeds.

    Returns:
        One row per ``(t, partition)`` with the mean, its standard error, the
        variance and ``variance / t``, the estimate of the limit constant
    """
    fbm_factor(n, float(horizon))

    def trial(seed: int) -> list[float]:
        path = sample_fbm(n, horizon, seed)
        return [renormalized_qv(path, t, m) for t in times for m in partitions]

    values = np.array(run_trials(trial, master_seed, trials, workers))
    rows = []
    for k, (t, m) in enumerate((t, m) for t in times for m in partitions):
        column = values[:, k]
        variance = float(np.var(column, ddof=1)) if trials > 1 else 0.0
        rows.append(
            {
                "t": t,
                "partition": m,
                "mean": float(np.mean(column)),
                "stderr": float(np.sqrt(variance / trials)),
                "variance": variance,
                "variance_over_t": variance / t,
            }
        )
    return pd.DataFrame(rows)

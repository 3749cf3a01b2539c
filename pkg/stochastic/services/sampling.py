"""
Exact Gaussian sampling of 1/4-fractional Brownian motion and of an
independent Brownian motion on uniform dyadic grids.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.linalg import LinAlgError, cholesky

from common.constants import MAX_FBM_POINTS
from common.exceptions import GridError

logger = logging.getLogger(__name__)

HURST = 0.25

# Stream numbers mixed into a path seed; X and W never share a stream.
FBM_STREAM = 0
BM_STREAM = 1


class PathKind(str, Enum):
    FBM14 = "fbm14"
    BM = "bm"


@dataclass(frozen=True, eq=False)
class GridPath:
    """Values of a path on the uniform grid ``k T / N``, ``k = 0..N``."""

    times: np.ndarray
    values: np.ndarray
    seed: int
    kind: PathKind

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    @property
    def step(self) -> float:
        return self.horizon / self.n

    def index_of(self, t: float) -> int:
        """Grid index of time ``t``; raises GridError when t is off the grid."""
        position = t / self.step
        index = int(round(position))
        if not 0 <= index <= self.n or abs(position - index) > 1e-9 * max(1.0, position):
            raise GridError(f"Time {t} is not on the grid of step {self.step}")
        return index

    def increments(self) -> np.ndarray:
        return np.diff(self.values)

    def coarsen(self, n: int) -> "GridPath":
        """The same path observed on the sub-grid with ``n`` steps."""
        check_resolution(n)
        if self.n % n:
            raise GridError(f"{n} steps do not divide the grid of {self.n} steps")
        stride = self.n // n
        return GridPath(self.times[::stride], self.values[::stride], self.seed, self.kind)


def check_resolution(n: int) -> None:
    if n < 1 or n & (n - 1):
        raise GridError(f"Grid resolution must be a power of two, got {n}")
    if n > MAX_FBM_POINTS:
        raise GridError(f"Grid resolution {n} exceeds {MAX_FBM_POINTS}")


def fbm_covariance(times: np.ndarray) -> np.ndarray:
    """``R(s, t) = (s^{1/2} + t^{1/2} − |t − s|^{1/2}) / 2``."""
    s, t = np.meshgrid(times, times, indexing="ij")
    exponent = 2 * HURST
    return 0.5 * (s**exponent + t**exponent - np.abs(t - s) ** exponent)


@lru_cache(maxsize=4)
def fbm_factor(n: int, horizon: float) -> np.ndarray:
    """Lower Cholesky factor of the covariance on ``t_1 .. t_N``."""
    check_resolution(n)
    times = np.linspace(0.0, horizon, n + 1)[1:]
    try:
        factor = cholesky(fbm_covariance(times), lower=True)
    except LinAlgError as e:
        raise GridError(f"Cholesky factorisation failed for N={n}: {e}")
    logger.debug(f"Cholesky factor cached for N={n}, T={horizon}")
    return factor


def path_rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream])


def trial_seed(master: int, index: int) -> int:
    """Counter-based seed of Monte Carlo trial ``index``."""
    return int(np.random.SeedSequence([master, index]).generate_state(1, dtype=np.uint64)[0])


def sample_fbm(n: int, horizon: float = 1.0, seed: int = 0) -> GridPath:
    """
    Exact sample of fBm with Hurst parameter 1/4.

    Args:
        n: Number of grid steps, a power of two
        horizon: Final time T
        seed: Path seed

    Returns:
        A GridPath starting at 0
    """
    factor = fbm_factor(n, float(horizon))
    z = path_rng(seed, FBM_STREAM).standard_normal(n)
    values = np.concatenate(([0.0], factor @ z))
    return GridPath(np.linspace(0.0, horizon, n + 1), values, seed, PathKind.FBM14)


def sample_bm(n: int, horizon: float = 1.0, seed: int = 0) -> GridPath:
    """Standard Brownian motion from the stream independent of the fBm one."""
    check_resolution(n)
    dw = path_rng(seed, BM_STREAM).normal(0.0, np.sqrt(horizon / n), n)
    values = np.concatenate(([0.0], np.cumsum(dw)))
    return GridPath(np.linspace(0.0, horizon, n + 1), values, seed, PathKind.BM)


def renormalized_qv(path: GridPath, t: float, n: int) -> float:
    """``√(t/n) Σ (√(n/t) ΔX² − 1)`` over the uniform partition of ``[0, t]``."""
    end = path.index_of(t)
    if n < 1 or end % n:
        raise GridError(f"{n} steps do not divide the grid up to t={t}")
    increments = np.diff(path.values[: end + 1 : end // n])
    return float(np.sqrt(t / n) * np.sum(np.sqrt(n / t) * increments**2 - 1.0))


def weighted_riemann_sum(path: GridPath, phi, t: float, n: int) -> float:
    """``Σ φ(X_{t_k}) √(t/n) (√(n/t) ΔX_k² − 1)``: the QV sum weighted by φ."""
    end = path.index_of(t)
    if n < 1 or end % n:
        raise GridError(f"{n} steps do not divide the grid up to t={t}")
    points = path.values[: end + 1 : end // n]
    increments = np.diff(points)
    weights = phi(points[:-1])
    return float(np.sum(weights * np.sqrt(t / n) * (np.sqrt(n / t) * increments**2 - 1.0)))


def midpoint_riemann_sum(path: GridPath, dphi, t: float, n: int) -> float:
    """``Σ φ'(X_{t_{2k−1}}) (X_{t_{2k}} − X_{t_{2k−2}})`` over ``n`` steps."""
    end = path.index_of(t)
    if n < 2 or n % 2 or end % n:
        raise GridError(f"{n} steps do not fit a midpoint sum up to t={t}")
    points = path.values[: end + 1 : end // n]
    return float(np.sum(dphi(points[1:-1:2]) * (points[2::2] - points[:-2:2])))


def ito_sum(f: GridPath | np.ndarray, w: GridPath, s: float, t: float) -> float:
    """Left-point sum ``Σ F_{t_i} ΔW_i`` over the grid steps in ``[s, t)``."""
    i, j = w.index_of(s), w.index_of(t)
    if i > j:
        raise GridError(f"Interval ({s}, {t}) is reversed")
    values = f.values if isinstance(f, GridPath) else np.asarray(f, dtype=float)
    if len(values) != len(w.values):
        raise GridError("Integrand and W must share one grid")
    return float(np.dot(values[i:j], np.diff(w.values[i : j + 1])))

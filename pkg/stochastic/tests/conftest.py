"""
Fixtures for the stochastic tests: small sampled paths and lifts over them.
"""

import pytest

from stochastic.services import build_lift, sample_bm, sample_fbm

SMALL_GRID = 64
PATH_SEED = 5


@pytest.fixture
def paths():
    return sample_fbm(SMALL_GRID, 1.0, PATH_SEED), sample_bm(SMALL_GRID, 1.0, PATH_SEED)


@pytest.fixture
def make_lift(paths):
    """Factory building the lift of a given kind over the shared paths."""
    x, w = paths

    def _make(kind):
        return build_lift(kind, x, w)

    return _make

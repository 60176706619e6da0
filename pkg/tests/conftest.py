"""Shared test helpers.

The linear driver G_t = t is the workhorse oracle: every downstream quantity
(trajectory, estimator, error statistic) has a closed form under it, so tests
can pin exact expected values without trusting the code under test.
"""
from __future__ import annotations

import numpy as np

from ouestim.kernels import bm
from ouestim.pathgen import SamplePath, TimeGrid


def linear_path(horizon: float = 1.0, n: int = 4096) -> SamplePath:
    """Deterministic driver G_t = t wrapped as a sample path."""
    grid = TimeGrid(horizon, n)
    return SamplePath(grid, grid.times.copy(), bm(), "closed-form", seed=0)


def function_path(fn, horizon: float = 1.0, n: int = 4096) -> SamplePath:
    """Wrap a deterministic function with fn(0)=0 as a sample path."""
    grid = TimeGrid(horizon, n)
    values = np.asarray([fn(t) for t in grid.times], dtype=float)
    return SamplePath(grid, values, bm(), "closed-form", seed=0)

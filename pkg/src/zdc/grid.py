"""Sup / inf of smooth functions of ``L = log T`` over a row ``[L0, L1]``.

The grid is geometric in ``L`` (rows span up to five orders of magnitude in
``log T``), with 1025 points including both endpoints.  When the sampled
values are monotone the extremum sits at an endpoint and is returned
exactly; otherwise the grid is refined x8 and the extremum is polished with
a bounded scalar search.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

GRID_POINTS = 1025
REFINE = 8


def log_t_grid(log_t0: float, log_t1: float, points: int = GRID_POINTS) -> np.ndarray:
    grid = np.geomspace(log_t0, log_t1, points)
    grid[0], grid[-1] = log_t0, log_t1
    return grid


def _is_monotone(values: np.ndarray) -> bool:
    diff = np.diff(values)
    scale = np.max(np.abs(values)) * 1e-13
    return bool(np.all(diff <= scale) or np.all(diff >= -scale))


def grid_sup(fn: Callable[[np.ndarray], np.ndarray], log_t0: float, log_t1: float,
             points: int = GRID_POINTS) -> float:
    """Maximum of vectorised ``fn`` over ``[log_t0, log_t1]``."""
    grid = log_t_grid(log_t0, log_t1, points)
    vals = np.asarray(fn(grid), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("non-finite value on the log T grid")
    if _is_monotone(vals):
        return float(max(vals[0], vals[-1]))
    grid = log_t_grid(log_t0, log_t1, (points - 1) * REFINE + 1)
    vals = np.asarray(fn(grid), dtype=float)
    i = int(np.argmax(vals))
    best = float(vals[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    if hi > lo:
        res = minimize_scalar(lambda t: -float(fn(np.array([t]))[0]), bounds=(lo, hi),
                              method="bounded", options={"xatol": 1e-12 * hi})
        best = max(best, -float(res.fun))
    return best


def grid_inf(fn: Callable[[np.ndarray], np.ndarray], log_t0: float, log_t1: float,
             points: int = GRID_POINTS) -> float:
    """Minimum of vectorised ``fn`` over ``[log_t0, log_t1]``."""
    return -grid_sup(lambda t: -np.asarray(fn(t)), log_t0, log_t1, points)

"""Zeros near the 1-line: the local count ``n(r, 1+it)`` and the per-square fit.

The count bound splits as ``A(r) log T + B(r)``.  Taking ``r = sqrt(2)(1-alpha)``
the fit ``b1 (1-alpha) log T + b2`` follows from ``b1 >= A(r)/(1-alpha)`` and
``b2 >= B(r)`` over ``alpha in [alpha0, 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .foundations import DomainError, up
from .params import ALPHA_MAX, ALPHA_MIN, RangeSpec
from .grid import log_t_grid

SHIFT_COROLLARY = 4.7908
SHIFT_LEMMA = 4.7098
HADAMARD_CONST = 2.6908
FIT_GRID = 512
FIT_MARGIN = 1e-9


@dataclass(frozen=True)
class ZeroCountCoefficients:
    b1: float
    b2: float

    def __post_init__(self):
        if not self.b1 > 0:
            raise ValueError("b1 must be positive")
        if not self.b2 >= 2:
            raise ValueError("b2 must be at least 2")

    def count(self, alpha, log_t):
        """``b1 (1 - alpha) log T + b2``."""
        return self.b1 * (1 - np.asarray(alpha)) * np.asarray(log_t) + self.b2


def _split(r, shift: float = SHIFT_COROLLARY):
    """``(A, B)`` with ``n(r, 1+it) <= A log T + B``."""
    r = np.asarray(r, dtype=float)
    a = 2 * r * (1 / (4 + 8 * r) + 16 * r * r / (1 + 2 * r) ** 2)
    b = 2 * r * (
        shift / (4 + 8 * r)
        + (4 / math.pi - 1) * np.log1p(1 / r) / (1 + 2 * r)
        + HADAMARD_CONST
        + 8 * r * (4 - r) / (1 + 2 * r) ** 2
    ) + 2
    return a, b


def local_zero_count_bound(r, log_t, shift: float = SHIFT_COROLLARY):
    """Upper bound for the number of zeros within ``r`` of ``1 + it``, ``|t| <= T``.

    Args:
        r: radius in ``(0, 1/2)``; scalar or array.
        log_t: ``log T`` with ``T >= 3e12``.
        shift: 4.7908 (corollary, default) or 4.7098 (as printed in the lemma).
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0) or np.any(r_arr >= 0.5):
        raise DomainError("r must lie in (0, 1/2)")
    L = np.asarray(log_t, dtype=float)
    r_ = r_arr
    out = 2 * r_ * (
        (L + shift) / (4 + 8 * r_)
        + (4 / math.pi - 1) * np.log1p(1 / r_) / (1 + 2 * r_)
        + HADAMARD_CONST
        + 8 * r_ / (1 + 2 * r_) ** 2 * (r_ * (2 * L - 1) + 4)
        + 1 / r_
    )
    return float(out) if out.ndim == 0 else out


def reciprocal_count_bound(b, log_t):
    """Simplified form valid for ``1/(a log T) <= r <= 1/b``."""
    b = np.asarray(b, dtype=float)
    L = np.asarray(log_t, dtype=float)
    out = (L / b * (0.5 + 32 / b**2) + 0.573803 / b * np.log(b) + (2.4 + 5.3816) / b
           + 64 / b**2 + 2 - 272 / b**3)
    return float(out) if out.ndim == 0 else out


def fit_rectangle_count(spec: RangeSpec, shift: float = SHIFT_COROLLARY) -> ZeroCountCoefficients:
    """Fit ``(b1, b2)`` dominating the local bound on ``[alpha0, 1] x [T0, T1]``."""
    if not ALPHA_MIN <= spec.alpha0 <= ALPHA_MAX:
        raise DomainError("alpha0 outside [0.985, 0.9927]")
    alphas = np.linspace(spec.alpha0, 1, FIT_GRID + 1)[:-1]
    r = math.sqrt(2) * (1 - alphas)
    a, b = _split(r, shift)
    # alpha -> 1 limits: A/(1-alpha) -> sqrt(2)/2, B -> 2
    b1 = up(max(float(np.max(a / (1 - alphas))), math.sqrt(2) / 2) + FIT_MARGIN)
    b2 = up(max(float(np.max(b)), 2.0) + FIT_MARGIN)
    coeffs = ZeroCountCoefficients(b1, b2)

    grid_l = log_t_grid(spec.log_t0, spec.log_t1, FIT_GRID)
    AL, LL = np.meshgrid(alphas, grid_l)
    exact = local_zero_count_bound(math.sqrt(2) * (1 - AL), LL, shift)
    assert np.all(coeffs.count(AL, LL) >= exact), "rectangle fit infeasible"
    return coeffs

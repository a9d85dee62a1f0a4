"""Comparison against the earlier bound ``C1 T^{8/3(1-s)} log^{5-2s} T + C2 log^2 T``.

The constants ``C1(sigma), C2(sigma)`` of that bound are external input: a
CSV with columns ``sigma,C1,C2``.  Entries are read as step functions -- the
row with the largest tabulated ``sigma_i <= sigma`` applies.
"""

from __future__ import annotations

import bisect
import csv
import math
import os
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path

import numpy as np

from .foundations import DomainError
from .params import RangeSpec
from .pipeline import DensityEstimate

KLN_ENV = "ZDC_KLN_FILE"
EIGHT_THIRDS = 8 / 3
REGIME_SPLIT_LOG = 500.0
SIGMA_GRID = 4096


class ExternalDataRequired(DomainError):
    """The comparison constants were not supplied."""


@dataclass(frozen=True)
class KlnConstants:
    sigmas: tuple[float, ...]
    c1_values: tuple[float, ...]
    c2_values: tuple[float, ...]

    def __post_init__(self):
        if not self.sigmas:
            raise ExternalDataRequired("comparison table is empty: external data required")
        if list(self.sigmas) != sorted(set(self.sigmas)):
            raise ValueError("sigma column must be strictly increasing")
        if min(self.c1_values) <= 0 or min(self.c2_values) <= 0:
            raise ValueError("C1 and C2 must be positive")

    def _index(self, sigma: float) -> int:
        i = bisect.bisect_right(self.sigmas, sigma) - 1
        if i < 0:
            raise DomainError(f"sigma = {sigma!r} below the tabulated range")
        return i

    def c1(self, sigma: float) -> float:
        return self.c1_values[self._index(sigma)]

    def c2(self, sigma: float) -> float:
        return self.c2_values[self._index(sigma)]

    def c1_min(self, alpha0: float) -> float:
        """Smallest ``C1`` that applies anywhere on ``[alpha0, 1]``."""
        return min(self.c1_values[self._index(alpha0):])


def read_kln_csv(path: str | os.PathLike) -> KlnConstants:
    """Parse ``sigma,C1,C2`` rows; lines starting with ``#`` are comments.

    Raises:
        OSError: if the file cannot be read.
        ExternalDataRequired: if the file has no data rows or lacks the columns.
    """
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or {"sigma", "C1", "C2"} - set(reader.fieldnames):
        raise ExternalDataRequired(f"{path}: expected columns sigma,C1,C2")
    rows = []
    for rec in reader:
        try:
            rows.append(tuple(float(Decimal(rec[k].strip())) for k in ("sigma", "C1", "C2")))
        except (InvalidOperation, AttributeError) as exc:
            raise ValueError(f"{path}: bad number in {rec}") from exc
    rows.sort()
    return KlnConstants(*(tuple(col) for col in zip(*rows))) if rows else KlnConstants((), (), ())


def load_kln(path: str | os.PathLike | None = None) -> KlnConstants:
    """Read the table from ``path`` or ``$ZDC_KLN_FILE``."""
    path = path or os.environ.get(KLN_ENV)
    if not path:
        raise ExternalDataRequired(
            f"comparison constants are external data: pass --kln-file or set {KLN_ENV}")
    return read_kln_csv(Path(path))


def kln_log_bound(kln: KlnConstants, sigma: float, log_t: float) -> float:
    first = math.log(kln.c1(sigma)) + EIGHT_THIRDS * (1 - sigma) * log_t + (5 - 2 * sigma) * math.log(log_t)
    second = math.log(kln.c2(sigma)) + 2 * math.log(log_t)
    return float(np.logaddexp(first, second))


def improvement_percent(sigma: float, log_t: float, ours: DensityEstimate, kln: KlnConstants) -> float:
    """``100 (1 - ours / theirs)`` at ``(sigma, T)``."""
    return 100 * (1 - math.exp(ours.log_bound(sigma, log_t) - kln_log_bound(kln, sigma, log_t)))


@dataclass(frozen=True)
class DominanceReport:
    passed: bool
    regime: str
    worst_margin: float
    detail: str


def sigma_threshold(est: DensityEstimate, c1: float, log_t):
    """Smallest ``sigma`` for which ``C T^{B(1-s)} <= C1 T^{8/3(1-s)} log^{5-2s} T`` (``B > 8/3``)."""
    L = np.asarray(log_t, dtype=float)
    lag = np.log(L) / L
    gap = est.B - EIGHT_THIRDS
    den = gap - 2 * lag
    if np.any(den <= 0):
        raise DomainError("sigma condition degenerates: B - 8/3 <= 2 loglog T / log T")
    return (gap - math.log(c1 / est.C) / L - 5 * lag) / den


def check_dominance(spec: RangeSpec, est: DensityEstimate, kln: KlnConstants) -> DominanceReport:
    """Verify ``C T^{B(1-s)} <= C1 T^{8/3(1-s)} log^{5-2s} T`` on the whole row."""
    c1 = kln.c1_min(spec.alpha0)
    grid = np.linspace(spec.log_t0, spec.log_t1, SIGMA_GRID)
    if spec.log_t1 <= REGIME_SPLIT_LOG and est.B > EIGHT_THIRDS:
        worst = float(np.max(sigma_threshold(est, c1, grid)))
        margin = spec.alpha0 - worst
        return DominanceReport(margin >= 0, "sigma-condition", margin,
                               f"max threshold sigma {worst:.6f} vs alpha0 {spec.alpha0}")
    if spec.log_t0 >= REGIME_SPLIT_LOG and est.B < EIGHT_THIRDS:
        lhs = math.log(c1) + 3 * math.log(spec.log_t0)
        margin = lhs - math.log(est.C)
        return DominanceReport(margin >= 0, "log-cube", margin,
                               f"log(C1 log^3 T0) = {lhs:.6f} vs log C = {math.log(est.C):.6f}")
    # straddling rows: check the log of the inequality directly on a (sigma, T) grid
    sig = np.linspace(spec.alpha0, 1, 257)
    S, L = np.meshgrid(sig, grid)
    rhs = math.log(c1) + EIGHT_THIRDS * (1 - S) * L + (5 - 2 * S) * np.log(L)
    lhs = math.log(est.C) + est.B * (1 - S) * L
    margin = float(np.min(rhs - lhs))
    return DominanceReport(margin >= 0, "direct-grid", margin, "min log-margin on the (sigma, T) grid")


# (sigma, log T, printed improvement in percent)
TABLE1_POINTS = (
    (0.9930, math.log(1e13), 13.4),
    (0.9930, 46.2, 58.4),
    (0.9930, 170.2, 97.4),
    (0.9900, 46.2, 4.1),
    (0.9900, 170.2, 96.2),
    (0.9850, 90.0, 16.2),
    (0.9900, 90.0, 72.6),
    (0.9930, 90.0, 86.0),
)


def row_index_for(specs, sigma: float, log_t: float) -> int:
    """Index of the first row whose rectangle ``[alpha0, 1] x (T0, T1]`` holds ``(sigma, T)``."""
    for i, spec in enumerate(specs):
        if spec.contains(sigma, log_t):
            return i
    raise DomainError(f"no row covers (sigma, log T) = ({sigma}, {log_t})")

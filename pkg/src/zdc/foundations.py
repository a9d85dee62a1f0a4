"""Explicit special-function bounds and zero-free region widths.

Heights ``T`` enter almost everywhere through ``log T`` because most table
rows live far beyond the range of a binary64 float (``T`` up to
``exp(6.7e12)``).  Functions that take a height therefore accept
``log_t`` rather than ``T``.
"""

from __future__ import annotations

import enum
import math
from decimal import Decimal


def _c(text: str) -> float:
    return float(Decimal(text))


# Literal constants, parsed once from their printed decimal form.
CLASSICAL_DENOM = _c("5.558691")
FORD_NUM = _c("0.04962")
FORD_SUB = _c("0.0196")
FORD_SHIFT = _c("1.15")
FORD_DEN_SHIFT = _c("0.685")
FORD_LOGLOG = _c("0.155")
ZETA_MEDIUM_COEF = _c("0.618")
LITTLEWOOD_DENOM = _c("21.233")
KOROBOV_DENOM = _c("53.989")

ZETA_SMALL = _c("1.461")
ZETA_LARGE_COEF = _c("66.7")
ZETA_LARGE_EXP = 27 / 164
ZETA_MEDIUM_LIMIT_LOG = 105.0

GAMMA_INTEGRAL_CAP = _c("1.0067")

RIEMANN_HEIGHT = 3e12
LOG_RIEMANN_HEIGHT = math.log(RIEMANN_HEIGHT)
LOG_FORD_START = 46.2
LOG_LITTLEWOOD_START = 170.2
LOG_KOROBOV_START = 481958.0
LOG_MAX_HEIGHT = 6.7e12


class ZeroFreeRegionKind(enum.Enum):
    CLASSICAL = "Classical"
    FORD = "Ford"
    LITTLEWOOD = "Littlewood"
    KOROBOV_VINOGRADOV = "KorobovVinogradov"


class DomainError(ValueError):
    """Argument outside the range where a bound is defined."""


def up(value: float) -> float:
    """Inflate an upper bound by one ulp."""
    return math.nextafter(value, math.inf)


def down(value: float) -> float:
    """Deflate a lower bound by one ulp."""
    return math.nextafter(value, -math.inf)


def ford_j(log_t: float) -> float:
    return log_t / 6 + math.log(log_t) + math.log(ZETA_MEDIUM_COEF)


def zero_free_width(kind: ZeroFreeRegionKind, log_t: float) -> float:
    """Width ``nu`` of the zero-free region ``sigma >= 1 - nu(T)``.

    Args:
        kind: which of the four explicit regions to use.
        log_t: ``log T``; must exceed 1 so that ``log log T`` is defined.
    """
    if not log_t > 1.0:
        raise DomainError(f"log T must exceed 1, got {log_t!r}")
    loglog = math.log(log_t)
    if kind is ZeroFreeRegionKind.CLASSICAL:
        return 1.0 / (CLASSICAL_DENOM * log_t)
    if kind is ZeroFreeRegionKind.FORD:
        j = ford_j(log_t)
        return (FORD_NUM - FORD_SUB / (j + FORD_SHIFT)) / (j + FORD_DEN_SHIFT + FORD_LOGLOG * loglog)
    if kind is ZeroFreeRegionKind.LITTLEWOOD:
        return loglog / (LITTLEWOOD_DENOM * log_t)
    if kind is ZeroFreeRegionKind.KOROBOV_VINOGRADOV:
        return 1.0 / (KOROBOV_DENOM * log_t ** (2 / 3) * loglog ** (1 / 3))
    raise TypeError(f"unknown region kind {kind!r}")


def select_region(log_t: float) -> ZeroFreeRegionKind:
    """Widest known region at height ``T = exp(log_t)``.

    Intervals are half-open on the left, ``(a, b]``, so a boundary height
    belongs to the region below it.
    """
    if not LOG_RIEMANN_HEIGHT <= log_t <= LOG_MAX_HEIGHT:
        raise DomainError(f"log T = {log_t!r} outside [log(3e12), 6.7e12]")
    if log_t <= LOG_FORD_START:
        return ZeroFreeRegionKind.CLASSICAL
    if log_t <= LOG_LITTLEWOOD_START:
        return ZeroFreeRegionKind.FORD
    if log_t <= LOG_KOROBOV_START:
        return ZeroFreeRegionKind.LITTLEWOOD
    return ZeroFreeRegionKind.KOROBOV_VINOGRADOV


def region_width(log_t: float) -> float:
    """``nu_i(T)`` with ``i`` picked by :func:`select_region`."""
    return zero_free_width(select_region(log_t), log_t)


def stirling_gamma_bound(sigma: float, t: float) -> float:
    """Upper bound for ``|Gamma(sigma + i t)|`` from the explicit Stirling formula."""
    if t == 0:
        raise DomainError("t must be nonzero")
    at = abs(t)
    modulus = math.hypot(sigma, t)
    return math.sqrt(2 * math.pi) * math.exp((sigma - 0.5) * math.log(at) - math.pi * at / 2 + 1 / (6 * modulus))


def gamma_near_real_bound(z_modulus: float, exponent_cap: float = GAMMA_INTEGRAL_CAP) -> float:
    """``|Gamma(z)| <= cap / |z|`` for ``0 < Re z <= 2 - 2*alpha0``.

    ``exponent_cap`` bounds ``int_0^inf t^x e^-t dt`` over the admissible
    real parts; 1.0067 covers ``x`` up to 0.03.
    """
    if not z_modulus > 0:
        raise DomainError("modulus must be positive")
    return exponent_cap / z_modulus


def zeta_halfline_bound(t: float) -> float:
    """Upper bound for ``|zeta(1/2 + i t)|`` (three independent branches)."""
    at = abs(t)
    if at <= 3:
        return ZETA_SMALL
    log_at = math.log(at)
    if log_at <= ZETA_MEDIUM_LIMIT_LOG:
        return ZETA_MEDIUM_COEF * math.exp(log_at / 6) * log_at
    return ZETA_LARGE_COEF * math.exp(ZETA_LARGE_EXP * log_at)

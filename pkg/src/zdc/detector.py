"""Zero-detector constants c1..c5 and the Gamma-zeta integral caps behind them.

Every T-power is handled through its logarithm: on the upper rows
``W/log W`` alone is ``exp(2400)``, while the full products stay O(1).
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from .foundations import (
    GAMMA_INTEGRAL_CAP,
    LOG_RIEMANN_HEIGHT,
    ZETA_LARGE_COEF,
    ZETA_LARGE_EXP,
    ZETA_SMALL,
    DomainError,
    region_width,
    up,
)
from .grid import grid_inf, grid_sup
from .params import GAMMA_SPLIT, ParamVector, RangeSpec
from .quadrature import QuadratureResult, integrate_exponential_tail, integrate_finite

E = ZETA_LARGE_EXP
SQRT_2PI = math.sqrt(2 * math.pi)
HALF_PI = math.pi / 2
QUAD_TOL = 1e-11

SECOND_TERM_COEF = 44.66
TAIL_CAP = 1e-20
HARMONIC_FACTOR = 1.12
GAMMA_SUM_FACTOR = 2.4

# Printed caps (upper bounds claimed for the integrals at alpha0 = 0.985).
PUBLISHED_J1 = 0.24113
PUBLISHED_J2 = 5.921
PUBLISHED_J2_GAMMA = 4.05206
PUBLISHED_J31 = 16.329
PUBLISHED_J32 = 253.419
PUBLISHED_J3 = 286.077
PUBLISHED_INTI = 140.297
PUBLISHED_THIRDINT = 280.594
PUBLISHED_FIRSTINT = 1e-10
PUBLISHED_SECONDINT = 1e-8
PUBLISHED_GAMMA_STRIP = 1.808


class InvalidRowError(DomainError):
    """The detector constants fail ``0 < c1``, ``c5 < 1`` or ``c1^2 > c5``."""


class JMode(enum.Enum):
    CERTIFIED = "certified"
    PUBLISHED = "published"


def gamma_abs(sigma: float, t):
    """``|Gamma(sigma + i t)|`` via the complex log-gamma."""
    z = sigma + 1j * np.asarray(t, dtype=float)
    return np.exp(loggamma(z).real)


def _stirling_envelope(sigma: float):
    # |Gamma(sigma+it)| <= sqrt(2pi) t^(sigma-1/2) e^(1/(6t)) e^(-pi t/2), monotone in t
    return lambda tc: SQRT_2PI * tc ** (sigma - 0.5) * math.exp(1 / (6 * tc))


def _stirling_prefactor(alpha0: float) -> float:
    return SQRT_2PI * math.exp(1 / (6 * (2 * alpha0 - 1.5)))


@dataclass(frozen=True)
class JConstants:
    """Certified upper bounds for the J-integrals at a given ``alpha0``.

    ``j31``/``j32`` are the coefficients of ``a^{27/164}``; ``j3`` combines
    ``2 j31 + j32``.
    """

    alpha0: float
    j1: float
    j2: float
    j31: float
    j32: float

    @property
    def j4(self) -> float:
        return self.j1

    @property
    def j3(self) -> float:
        return up(2 * self.j31 + self.j32)

    @property
    def constant_part(self) -> float:
        return up(self.j1 + self.j2 + self.j4)


PUBLISHED_J = JConstants(alpha0=0.985, j1=PUBLISHED_J1, j2=PUBLISHED_J2, j31=PUBLISHED_J31, j32=PUBLISHED_J32)


def j1_integral(alpha0: float) -> QuadratureResult:
    """``int_3^inf (2t)^{27/164} t^{1-2 alpha0} e^{-pi t/2} dt``."""
    e = 1 - 2 * alpha0
    return integrate_exponential_tail(
        lambda t: (2 * t) ** E * t**e * np.exp(-HALF_PI * t), 3.0, HALF_PI,
        lambda tc: (2 * tc) ** E * tc**e, rel_tol=QUAD_TOL)


def j2_gamma_integral(alpha0: float) -> QuadratureResult:
    """``int_{-inf}^{3} |Gamma(3/2 - 2 alpha0 + it)| dt``."""
    sigma = 1.5 - 2 * alpha0
    f = lambda t: gamma_abs(sigma, t)
    core = integrate_finite(f, 0.0, 3.0, rel_tol=QUAD_TOL)
    tail = integrate_exponential_tail(f, 3.0, HALF_PI, _stirling_envelope(sigma), rel_tol=QUAD_TOL)
    # |Gamma| is even in t: (-inf, 3] = [3, inf) + 2 [0, 3]
    return QuadratureResult(2 * core.value + tail.value, 2 * core.error_bound + tail.error_bound)


def j31_integral(alpha0: float) -> QuadratureResult:
    """``int_1^inf (t/3 + 1)^{27/164} t^{1-2 alpha0} e^{-pi t/2} dt``."""
    e = 1 - 2 * alpha0
    return integrate_exponential_tail(
        lambda t: (t / 3 + 1) ** E * t**e * np.exp(-HALF_PI * t), 1.0, HALF_PI,
        lambda tc: (tc / 3 + 1) ** E * tc**e, rel_tol=QUAD_TOL)


def j32_integral(alpha0: float) -> QuadratureResult:
    """``int_{-1}^{1} |t/3 + 1|^{27/164} |Gamma(3/2 - 2 alpha0 + it)| dt``."""
    sigma = 1.5 - 2 * alpha0
    return integrate_finite(lambda t: np.abs(t / 3 + 1) ** E * gamma_abs(sigma, t), -1.0, 1.0, rel_tol=QUAD_TOL)


@functools.lru_cache(maxsize=64)
def certified_j_constants(alpha0: float) -> JConstants:
    pre = ZETA_LARGE_COEF * _stirling_prefactor(alpha0)
    return JConstants(
        alpha0=alpha0,
        j1=up(pre * j1_integral(alpha0).certified_upper),
        j2=up(ZETA_SMALL * j2_gamma_integral(alpha0).certified_upper),
        j31=up(pre * j31_integral(alpha0).certified_upper),
        j32=up(ZETA_LARGE_COEF * j32_integral(alpha0).certified_upper),
    )


def j_constants(alpha0: float, mode: JMode = JMode.CERTIFIED) -> JConstants:
    return PUBLISHED_J if mode is JMode.PUBLISHED else certified_j_constants(alpha0)


# --- integrals behind the S(X) estimate (lower bound c1) -------------------

def _halfline_prefactor(alpha0: float) -> float:
    return SQRT_2PI * math.exp(1 / (6 * abs(0.5 - alpha0)))


def firstint_bound(alpha0: float, log_t0: float = LOG_RIEMANN_HEIGHT) -> float:
    """Certified upper value of the outer-left integral (printed cap 1e-10)."""
    g = GAMMA_SPLIT * log_t0
    res = integrate_exponential_tail(
        lambda t: (2 * t) ** E * t**-alpha0 * np.exp(-HALF_PI * t), 3 + g, HALF_PI,
        lambda tc: (2 * tc) ** E * tc**-alpha0, rel_tol=QUAD_TOL)
    return up(_halfline_prefactor(alpha0) * ZETA_LARGE_COEF * res.certified_upper)


def secondint_bound(alpha0: float, log_t0: float = LOG_RIEMANN_HEIGHT) -> float:
    """Certified upper value of the middle integral (printed cap 1e-8)."""
    g = GAMMA_SPLIT * log_t0
    res = integrate_finite(lambda t: t**-alpha0 * np.exp(-HALF_PI * t), g - 3, g + 3, rel_tol=QUAD_TOL)
    return up(_halfline_prefactor(alpha0) * ZETA_SMALL * res.certified_upper)


def gamma_strip_integral(alpha0: float) -> QuadratureResult:
    """``int_0^1 |Gamma(1/2 - alpha0 + it)| dt`` (printed as <= 1.808)."""
    return integrate_finite(lambda t: gamma_abs(0.5 - alpha0, t), 0.0, 1.0, rel_tol=QUAD_TOL)


def inti_coefficient(alpha0: float, log_t0: float = LOG_RIEMANN_HEIGHT) -> float:
    """Certified coefficient of ``gamma^{27/164}`` in I1 and I2 (printed 140.297)."""
    g = GAMMA_SPLIT * log_t0
    near = ZETA_LARGE_COEF * (1 + 1 / g) ** E * gamma_strip_integral(alpha0).certified_upper
    far_pre = SQRT_2PI * math.exp(1 / 6) * ZETA_LARGE_COEF
    far = integrate_exponential_tail(
        lambda t: (t / g + 1) ** E * t**-alpha0 * np.exp(-HALF_PI * t), 1.0, HALF_PI,
        lambda tc: (tc / g + 1) ** E * tc**-alpha0, rel_tol=QUAD_TOL)
    return up(near + far_pre * far.certified_upper)


# --- detector constants ------------------------------------------------------

@dataclass(frozen=True)
class DetectorConstants:
    c1: float
    c2: float
    c3: float
    c4: float
    c5: float

    @property
    def margin(self) -> float:
        """``c1^2 - c5``; must be positive for a usable row."""
        return self.c1**2 - self.c5

    def validate(self) -> "DetectorConstants":
        if not 0 < self.c1 <= 1:
            raise InvalidRowError(f"c1 = {self.c1!r} not in (0, 1]")
        if not 0 < self.c5 < 1:
            raise InvalidRowError(f"c5 = {self.c5!r} not in (0, 1)")
        if not self.margin > 0:
            raise InvalidRowError(f"c1^2 - c5 = {self.margin!r} is not positive")
        return self


def tail_sum_bound(spec: RangeSpec, p: ParamVector) -> float:
    """Sup over the row of the ``n > U`` tail bound (printed cap 1e-20)."""
    def log_tail(L):
        return (math.log(3.8 / (p.w * (p.v - p.u))) - 2 * np.log(L) - L * (L - 2 * p.u)
                + np.log(L**2 + 1) - 4 * np.log(L))
    return math.exp(grid_sup(log_tail, spec.log_t0, spec.log_t1))


def c1_lower_bound(spec: RangeSpec, p: ParamVector, d2_vw: float, *, strict_residue: bool = False) -> float:
    """Lower bound ``c1`` for the detector at a zero with real part above ``alpha0``.

    ``strict_residue`` uses ``(v+w)^4`` in the residue term (matching
    ``log^4(VW)``) instead of the printed ``(u+w)^4``.

    Raises:
        InvalidRowError: if the bound is not positive.
    """
    a0 = spec.alpha0
    g0 = GAMMA_SPLIT * spec.log_t0
    lead = (p.v + p.w) if strict_residue else (p.u + p.w)
    log_res_const = math.log(d2_vw * lead**4 * SQRT_2PI) + 1 / (6 * g0)
    log_sec_const = math.log(SECOND_TERM_COEF * d2_vw * (p.v + p.w) ** 4)
    sec_rate = (p.v + p.w) / 2 + p.x * (0.5 - a0) + E
    tail = max(TAIL_CAP, tail_sum_bound(spec, p))

    def lower(L):
        with np.errstate(over="ignore"):
            main = np.exp(-(L**2) * np.exp(-p.u * L))
            res = np.exp(log_res_const + 4 * np.log(L) + p.x * (1 - a0) * L
                         - GAMMA_SPLIT * math.pi * L / 2 - (a0 - 0.5) * np.log(GAMMA_SPLIT * L))
            sec = np.exp(log_sec_const + sec_rate * L + 4 * np.log(L))
        return main - res - sec - tail

    try:
        c1 = grid_inf(lower, spec.log_t0, spec.log_t1)
    except FloatingPointError:  # a subtracted term overflowed: hopeless row
        c1 = -math.inf
    if not c1 > 0:
        raise InvalidRowError(f"c1 = {c1!r} is not positive")
    return c1


def c2_constant(d4: float, d5: float, w: float) -> float:
    if not w > 0:
        raise DomainError("w must be positive")
    return up(GAMMA_INTEGRAL_CAP * d4 * d5 / w)


def c3_constant(d4: float, d5: float, w: float, nu_at_t1: float) -> float:
    if not 0 < nu_at_t1 < 1:
        raise DomainError("nu must lie in (0, 1)")
    return up(2 * d4 * d5 * GAMMA_INTEGRAL_CAP * HARMONIC_FACTOR * math.log(1 / nu_at_t1) / w)


def c4_integral(alpha0: float) -> QuadratureResult:
    """``int_1^inf e^{1/(6y)} y^{1.5 - 2 alpha0} e^{-pi y/2} dy``."""
    e = 1.5 - 2 * alpha0
    return integrate_exponential_tail(
        lambda y: np.exp(1 / (6 * y)) * y**e * np.exp(-HALF_PI * y), 1.0, HALF_PI,
        lambda yc: math.exp(1 / (6 * yc)) * yc**e, rel_tol=QUAD_TOL)


@functools.lru_cache(maxsize=64)
def _c4_factor(alpha0: float) -> float:
    return c4_integral(alpha0).certified_upper


def c4_constant(d4: float, d5: float, w: float, alpha0: float) -> float:
    if not alpha0 >= 0.985:
        raise DomainError("alpha0 must be at least 0.985")
    return up(2 * SQRT_2PI * GAMMA_SUM_FACTOR * d5 * d4 / w * _c4_factor(alpha0))


def c5_constant(spec: RangeSpec, p: ParamVector, d4: float, d5: float,
                j_mode: JMode = JMode.CERTIFIED) -> float:
    """Sup over the row of the off-diagonal integral contribution.

    Raises:
        InvalidRowError: if ``c5 >= 1``.
    """
    j = j_constants(spec.alpha0, j_mode)
    e15 = 1.5 - 2 * spec.alpha0
    log_pre = math.log(d4 * d5 / (2 * math.pi))
    log_jc, log_j3 = math.log(j.constant_part), math.log(j.j3)

    def log_c5(L):
        lw = p.w * L
        powers = np.logaddexp(p.x * L * e15, (p.u * L - 2 * np.log(L)) * e15)
        jsum = np.logaddexp(log_jc, log_j3 + E * L)
        return log_pre + lw - np.log(lw) + powers + jsum

    c5 = up(math.exp(grid_sup(log_c5, spec.log_t0, spec.log_t1)))
    if not c5 < 1:
        raise InvalidRowError(f"c5 = {c5!r} is not below 1")
    return c5


def detector_constants(spec: RangeSpec, p: ParamVector, d2_vw: float, d4: float, d5: float,
                       *, j_mode: JMode = JMode.CERTIFIED, strict_residue: bool = False) -> DetectorConstants:
    nu1 = region_width(spec.log_t1)
    return DetectorConstants(
        c1=c1_lower_bound(spec, p, d2_vw, strict_residue=strict_residue),
        c2=c2_constant(d4, d5, p.w),
        c3=c3_constant(d4, d5, p.w, nu1),
        c4=c4_constant(d4, d5, p.w, spec.alpha0),
        c5=c5_constant(spec, p, d4, d5, j_mode),
    ).validate()

"""Divisor-sum constants d1..d5 and a brute-force oracle for the sieve-weight lemmas.

All row-dependent constants are sups over ``T in [T0, T1]`` evaluated in
``L = log T`` (see :mod:`zdc.grid`), so ``U = T^u`` never materialises.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass

import numpy as np

from . import kernels
from .foundations import DomainError, up
from .grid import grid_sup
from .params import ParamVector, RangeSpec
from .published import find_row

# sum_{n<=x} d(n)^2 = x (D1 log^3 x + D2 log^2 x + D3 log x + D4) + error terms
D1 = 1 / math.pi**2
D2 = 0.745
D3 = 0.824
D4 = 0.461
D1_ERR_A = 9.73
D1_ERR_B = 0.73
D1_MIN_X = 433
LOG_D1_MIN_X = math.log(D1_MIN_X)

GRAHAM_FACTOR = 1.0061
MERTENS_CONST = 1.333  # upper rounding of c0 = 1.332582...
MERTENS_CONST_EXACT = 1.332582
GRAHAM_TAIL = 11.0
G1_TAIL = 3.95

RAMARE_SCALE = 3.09
RAMARE_A = 1.301
RAMARE_B = 1.084
RAMARE_C = 0.116


class D3Mode(enum.Enum):
    LITERAL = "literal"
    TABLE = "table"


def default_d3_mode() -> D3Mode:
    """``ZDC_D3_MODE`` if set, else literal."""
    raw = os.environ.get("ZDC_D3_MODE", "literal").strip().lower()
    try:
        return D3Mode(raw)
    except ValueError:
        raise DomainError(f"ZDC_D3_MODE must be 'literal' or 'table', got {raw!r}") from None


@dataclass(frozen=True)
class DivisorSumConstants:
    d11: float
    d12: float
    d21: float
    d22: float
    d3: float
    d4: float
    d5: float
    d3_mode: D3Mode = D3Mode.LITERAL

    def __post_init__(self):
        for name in ("d11", "d12", "d21", "d22", "d3", "d4", "d5"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


def _d1_terms(log_x):
    lx = np.asarray(log_x, dtype=float)
    return (D1 + D2 / lx + D3 / lx**2 + D4 / lx**3
            + D1_ERR_A * np.exp(-lx / 4) / lx**2 + D1_ERR_B * np.exp(-lx / 2) / lx**3)


def d1_coefficient(log_x_lo: float) -> float:
    """``d1`` with ``sum_{n<=x} d(n)^2 <= d1 x log^3 x`` for all ``x >= x_lo``.

    Args:
        log_x_lo: ``log x_lo``; ``x_lo`` must be at least 433.
    """
    if not log_x_lo >= LOG_D1_MIN_X:
        raise DomainError(f"x_lo = exp({log_x_lo!r}) is below 433")
    probe = _d1_terms(log_x_lo * np.array([1.0, 1.001, 1.01, 1.1, 2.0, 10.0]))
    # every correction term decreases in x, so the sup is the left end
    assert np.all(np.diff(probe) <= 0)
    return up(float(probe[0]))


def d2_coefficient(d1: float, log_x_lo: float) -> float:
    """``d2 = d1 (1/4 + 1/log x_lo)``."""
    if not d1 > 0:
        raise DomainError("d1 must be positive")
    if not log_x_lo > 0:
        raise DomainError("x_lo must exceed 1")
    return up(d1 * (0.25 + 1 / log_x_lo))


def _d3_literal_profile(p: ParamVector):
    def f(L):
        lu = p.u * L
        tail = GRAHAM_TAIL * np.exp(-lu / 2) / np.sqrt(lu)
        return 4 * GRAHAM_FACTOR * (lu + MERTENS_CONST + tail + 1) / ((p.v - p.u) ** 2 * L)
    return f


def d3_coefficient(spec: RangeSpec, p: ParamVector, mode: D3Mode | None = None) -> float:
    """Coefficient with ``sum_{n<=N} Psi(n)^2 <= d3 N / log T`` for ``N > UV``.

    ``literal`` is the smallest constant implied by the Psi^2 lemma on the
    row; ``table`` returns the stored appendix value (published rows only).
    """
    mode = default_d3_mode() if mode is None else mode
    if mode is D3Mode.TABLE:
        row = find_row(spec.log_t0, spec.log_t1, spec.alpha0)
        if row is None:
            raise DomainError("d3 table mode is only defined for published rows")
        return row.num("d3")
    return up(grid_sup(_d3_literal_profile(p), spec.log_t0, spec.log_t1))


def ramare_term(p: ParamVector) -> float:
    t = p.v / p.u
    poly = RAMARE_A * (t * t + 1) + RAMARE_B * (t + 1) - RAMARE_C
    return RAMARE_SCALE * (p.u + p.v) / (p.v - p.u) * poly / (t - 1)


def d4_coefficient(spec: RangeSpec, p: ParamVector, d3: float) -> float:
    """Bound for ``sum Psi(n)^2/n (e^{-n/X} - e^{-n L^2/U})``."""
    if not p.v > p.u:
        raise DomainError("need v > u")
    gap = p.x - p.u - p.v

    def tail(L):
        uv_over_x = np.exp(-gap * L)
        return d3 / (np.exp(uv_over_x) * L) + d3 / L * (2 + gap * L)

    return up(ramare_term(p) + grid_sup(tail, spec.log_t0, spec.log_t1))


def d5_coefficient(spec: RangeSpec, p: ParamVector) -> float:
    """``d5`` with ``|G(1)| <= d5 / log W``."""
    def f(L):
        lw = p.w * L
        return GRAHAM_FACTOR * (1 + (MERTENS_CONST + G1_TAIL * np.exp(-lw / 2)) / lw)

    if not p.w * spec.log_t0 > 0:
        raise DomainError("need W > 1")
    return up(grid_sup(f, spec.log_t0, spec.log_t1))


def divisor_sum_constants(spec: RangeSpec, p: ParamVector, mode: D3Mode | None = None) -> DivisorSumConstants:
    mode = default_d3_mode() if mode is None else mode
    log_vw = (p.v + p.w) * spec.log_t0
    log_w2 = 2 * p.w * spec.log_t0
    d11 = d1_coefficient(log_vw)
    d12 = d1_coefficient(log_w2)
    d3 = d3_coefficient(spec, p, mode)
    return DivisorSumConstants(
        d11=d11,
        d12=d12,
        d21=d2_coefficient(d11, log_vw),
        d22=d2_coefficient(d12, log_w2),
        d3=d3,
        d4=d4_coefficient(spec, p, d3),
        d5=d5_coefficient(spec, p),
        d3_mode=mode,
    )


# --- desk-scale oracle -----------------------------------------------------

def psi_weights(U: float, V: float, mu: np.ndarray) -> np.ndarray:
    """``psi_d`` for ``d = 0..len(mu)-1`` (index 0 unused)."""
    if not 1 <= U < V:
        raise DomainError("need 1 <= U < V")
    d = np.arange(len(mu), dtype=float)
    out = mu.astype(float)
    mid = (d > U) & (d <= V)
    out[mid] *= np.log(V / d[mid]) / math.log(V / U)
    out[d > V] = 0.0
    out[0] = 0.0
    return out


def theta_weights(W: float, mu: np.ndarray) -> np.ndarray:
    """``theta_d = mu(d) log(W/d)/log W`` for ``d <= W``."""
    if not W > 1:
        raise DomainError("need W > 1")
    d = np.arange(len(mu), dtype=float)
    out = np.zeros(len(mu))
    keep = (d >= 1) & (d <= W)
    out[keep] = mu[keep] * np.log(W / d[keep]) / math.log(W)
    return out


def graham_weights(z: float, mu: np.ndarray) -> np.ndarray:
    """``Lambda_z(d) = mu(d) log(z/d)`` for ``d <= z``."""
    d = np.arange(len(mu), dtype=float)
    out = np.zeros(len(mu))
    keep = (d >= 1) & (d <= z)
    out[keep] = mu[keep] * np.log(z / d[keep])
    return out


@dataclass(frozen=True)
class WeightSums:
    sum_psi_sq: float
    sum_psi_sq_over_n: float
    sum_theta_prod: float


ORACLE_LIMIT = 10**7


def weights_oracle(U: int, V: int, W: int, N: int, *, with_arrays: bool = False):
    """Exact sieve sums for the Barban-Vehov weights up to ``N``.

    Returns ``sum Psi(n)^2``, ``sum Psi(n)^2/n`` and
    ``sum (sum_{d|n} Lambda_U(d)) (sum_{e|n} Lambda_V(e))`` over ``1 <= n <= N``.
    With ``with_arrays`` also returns ``(Psi, Theta)`` indexed ``0..N``.
    """
    if N > ORACLE_LIMIT:
        raise DomainError(f"N = {N} exceeds the sieve budget {ORACLE_LIMIT}")
    if not 1 <= U < V:
        raise DomainError("need 1 <= U < V")
    top = max(N, V, W)
    mu, _ = kernels.linear_sieve(top)
    psi = kernels.divisor_sum(psi_weights(U, V, mu)[: V + 1], N)
    n = np.arange(N + 1, dtype=float)
    n[0] = 1.0
    lam1 = kernels.divisor_sum(graham_weights(U, mu)[: U + 1], N)
    lam2 = kernels.divisor_sum(graham_weights(V, mu)[: V + 1], N)
    sums = WeightSums(
        sum_psi_sq=math.fsum(psi[1:] ** 2),
        sum_psi_sq_over_n=math.fsum(psi[1:] ** 2 / n[1:]),
        sum_theta_prod=math.fsum(lam1[1:] * lam2[1:]),
    )
    if not with_arrays:
        return sums
    theta = kernels.divisor_sum(theta_weights(W, mu)[: W + 1], N)
    return sums, psi, theta


def divisor_square_sum(x: int) -> int:
    """Exact ``sum_{n<=x} d(n)^2``."""
    _, d = kernels.linear_sieve(x)
    return int(np.sum(d[1:].astype(np.int64) ** 2))


# --- closed-form lemma bounds, for the oracle checks -----------------------

def graham_bound(z1: float, N: int) -> float:
    """Bound on ``sum_{n<=N} (sum_{d|n} Lambda_1)(sum_{e|n} Lambda_2)`` for ``z1 z2 < N``."""
    tail = GRAHAM_TAIL / math.sqrt(z1 * math.log(z1))
    return GRAHAM_FACTOR * (N - 1) * (math.log(z1) + MERTENS_CONST + tail) + N


def psi_square_bound(U: float, V: float, N: int) -> float:
    """Bound on ``sum_{n<=N} Psi(n)^2`` (valid for ``N > UV``)."""
    return 4 / math.log(V / U) ** 2 * GRAHAM_FACTOR * (
        (N - 1) * (math.log(U) + MERTENS_CONST + GRAHAM_TAIL / math.sqrt(U * math.log(U))) + N
    )


def ramare_bound(z1: float, z2: float, N: int) -> float:
    """Bound on ``sum_{n<=N} Psi(n)^2/n`` for ``N >= z1 >= 100``, ``z2 = z1^t``."""
    t = math.log(z2) / math.log(z1)
    poly = RAMARE_A * (1 + t * t) + RAMARE_B * (t + 1) - RAMARE_C
    return RAMARE_SCALE * math.log(N) / math.log(z2 / z1) * poly / (t - 1)


def divisor_square_bound(x: float) -> float:
    """``d1(x) x log^3 x`` with ``d1`` evaluated at ``x`` itself."""
    lx = math.log(x)
    return d1_coefficient(lx) * x * lx**3

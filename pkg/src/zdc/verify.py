"""Confirmation checks: printed integral caps and desk-scale lemma oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import detector as det
from .arith import (
    divisor_square_bound, divisor_square_sum, graham_bound, psi_square_bound, ramare_bound,
    weights_oracle,
)
from .params import ALPHA_MIN


@dataclass(frozen=True)
class Check:
    """One confirmation: ``value <= cap`` must hold."""

    name: str
    value: float
    cap: float

    @property
    def passed(self) -> bool:
        return self.value <= self.cap

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.value:.10g} <= {self.cap:.10g}"


def integral_checks(alpha0: float = ALPHA_MIN) -> list[Check]:
    """Certified values of the J-integrals and the S(X) integrals against their printed caps."""
    j = det.certified_j_constants(alpha0)
    inti = det.inti_coefficient(alpha0)
    return [
        Check("J1 = J4", j.j1, det.PUBLISHED_J1),
        Check("J2", j.j2, det.PUBLISHED_J2),
        Check("J31 (coefficient of a^{27/164})", j.j31, det.PUBLISHED_J31),
        Check("J32 (coefficient of a^{27/164})", j.j32, det.PUBLISHED_J32),
        Check("J3 = 2 J31 + J32", j.j3, det.PUBLISHED_J3),
        Check("I1, I2 (coefficient of gamma^{27/164})", inti, det.PUBLISHED_INTI),
        Check("I3 (coefficient of gamma^{27/164})", 2 * inti, det.PUBLISHED_THIRDINT),
        Check("outer tail integral", det.firstint_bound(alpha0), det.PUBLISHED_FIRSTINT),
        Check("middle integral", det.secondint_bound(alpha0), det.PUBLISHED_SECONDINT),
    ]


def random_weight_cases(count: int, seed: int = 0, n_max: int = 10**6) -> list[tuple[int, int, int]]:
    """``(U, V, N)`` with ``100 <= U < V`` and ``U V < N <= n_max``."""
    rng = np.random.default_rng(seed)
    cases = []
    while len(cases) < count:
        n = int(rng.integers(n_max // 10, n_max + 1))
        u = int(rng.integers(100, 400))
        v_hi = (n - 1) // u
        if v_hi <= u + 1:
            continue
        v = int(rng.integers(u + 1, v_hi + 1))
        cases.append((u, v, n))
    return cases


def weight_checks(cases: list[tuple[int, int, int]]) -> list[Check]:
    """Exact sieve sums against the three lemma bounds for each ``(U, V, N)``."""
    out = []
    for u, v, n in cases:
        s = weights_oracle(u, v, u, n)
        tag = f"U={u} V={v} N={n}"
        out.append(Check(f"sum Psi^2 [{tag}]", s.sum_psi_sq, psi_square_bound(u, v, n)))
        out.append(Check(f"sum Psi^2/n [{tag}]", s.sum_psi_sq_over_n, ramare_bound(u, v, n)))
        out.append(Check(f"sum Lambda_U Lambda_V [{tag}]", s.sum_theta_prod, graham_bound(u, n)))
    return out


def divisor_checks(xs=(10**3, 10**4, 10**5, 10**6)) -> list[Check]:
    return [Check(f"sum d(n)^2, x={x}", float(divisor_square_sum(x)), divisor_square_bound(x)) for x in xs]


def run_all(only: str | None = None, alpha0: float = ALPHA_MIN, weight_cases: int = 8,
            seed: int = 0) -> list[Check]:
    checks: list[Check] = []
    if only in (None, "integrals"):
        checks += integral_checks(alpha0)
    if only in (None, "weights"):
        checks += weight_checks(random_weight_cases(weight_cases, seed)) + divisor_checks()
    return checks


def all_passed(checks: list[Check]) -> bool:
    return all(c.passed for c in checks) and not any(math.isnan(c.value) for c in checks)

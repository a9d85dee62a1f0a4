"""Row domain ``(T0, T1, alpha0)`` and free exponents ``(u, v, w, x)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .foundations import LOG_MAX_HEIGHT, LOG_RIEMANN_HEIGHT, RIEMANN_HEIGHT, DomainError

ALPHA_MIN = 0.985
ALPHA_MAX = 0.9927
GAMMA_SPLIT = 0.447


class ParameterError(DomainError):
    """A feasibility gate failed; ``gate`` names it."""

    def __init__(self, gate: str, message: str):
        super().__init__(f"{gate}: {message}")
        self.gate = gate


@dataclass(frozen=True)
class RangeSpec:
    """Heights ``(T0, T1]`` stored as natural logs, plus the lower edge ``alpha0``."""

    log_t0: float
    log_t1: float
    alpha0: float

    def __post_init__(self):
        # tolerate the rounding of log(3e12) coming in through a text round-trip
        if not self.log_t0 >= LOG_RIEMANN_HEIGHT * (1 - 1e-15):
            raise ParameterError("T0>=3e12", f"log T0 = {self.log_t0!r} is below log(3e12)")
        if not self.log_t0 < self.log_t1:
            raise ParameterError("T0<T1", f"need log T0 < log T1, got {self.log_t0!r}, {self.log_t1!r}")
        if not self.log_t1 <= LOG_MAX_HEIGHT:
            raise ParameterError("T1<=exp(6.7e12)", f"log T1 = {self.log_t1!r}")
        if not ALPHA_MIN <= self.alpha0 <= ALPHA_MAX:
            raise ParameterError("alpha0-range", f"alpha0 = {self.alpha0!r} outside [0.985, 0.9927]")
        if not GAMMA_SPLIT * self.log_t1 <= RIEMANN_HEIGHT:
            raise ParameterError("RH-split", "0.447 log T1 exceeds 3e12")

    def contains(self, sigma: float, log_t: float) -> bool:
        return self.alpha0 <= sigma <= 1 and self.log_t0 < log_t <= self.log_t1


@dataclass(frozen=True)
class ParamVector:
    """Exponents with ``U, V, W, X = T^u, T^v, T^w, T^x``."""

    u: float
    v: float
    w: float
    x: float

    def __post_init__(self):
        if not 0 < self.w:
            raise ParameterError("w>0", f"w = {self.w!r}")
        if not self.w < self.u:
            raise ParameterError("w<u", f"w = {self.w!r}, u = {self.u!r}")
        if not self.u < self.v:
            raise ParameterError("u<v", f"u = {self.u!r}, v = {self.v!r}")
        if not self.u + self.v < self.x:
            raise ParameterError("u+v<x", f"u+v = {self.u + self.v!r}, x = {self.x!r}")
        if not all(math.isfinite(c) for c in (self.u, self.v, self.w, self.x)):
            raise ParameterError("finite", "non-finite exponent")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.u, self.v, self.w, self.x)

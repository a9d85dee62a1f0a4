"""Row assembly into the final ``(B, C)`` and the published interval schedule."""

from __future__ import annotations

import math
from decimal import ROUND_CEILING, Decimal
from dataclasses import asdict, dataclass, field

from .arith import D3Mode, DivisorSumConstants, divisor_sum_constants
from .detector import DetectorConstants, JMode, detector_constants
from .foundations import DomainError, region_width
from .params import ParamVector, RangeSpec
from .published import UNIFORM_ROW, parse_height, published_rows
from .zerocount import SHIFT_COROLLARY, ZeroCountCoefficients, fit_rectangle_count


@dataclass(frozen=True)
class DensityEstimate:
    """``N(sigma, T) <= C T^{B(1 - sigma)}`` on one row, with ``C = C1_part + C2_part``."""

    B: float
    C1_part: float
    C2_part: float

    @property
    def C(self) -> float:
        return self.C1_part + self.C2_part

    def log_bound(self, sigma: float, log_t: float) -> float:
        return math.log(self.C) + self.B * (1 - sigma) * log_t


@dataclass(frozen=True)
class RowResult:
    """All intermediate constants for one row plus the final estimate."""

    spec: RangeSpec
    params: ParamVector
    divisor: DivisorSumConstants
    zeros: ZeroCountCoefficients
    detector: DetectorConstants
    estimate: DensityEstimate

    def record(self) -> dict:
        """Flat mapping of every constant, in table order."""
        d, z, c, e = self.divisor, self.zeros, self.detector, self.estimate
        return {
            "t0_log": self.spec.log_t0, "t1_log": self.spec.log_t1, "alpha0": self.spec.alpha0,
            "u": self.params.u, "v": self.params.v, "w": self.params.w, "x": self.params.x,
            "d11": d.d11, "d12": d.d12, "d21": d.d21, "d22": d.d22,
            "d3": d.d3, "mode": d.d3_mode.value, "d4": d.d4, "d5": d.d5,
            "b1": z.b1, "b2": z.b2,
            "c1": c.c1, "c2": c.c2, "c3": c.c3, "c4": c.c4, "c5": c.c5,
            "C1_part": e.C1_part, "C2_part": e.C2_part, "C": e.C, "B": e.B,
        }


def combine(detector: DetectorConstants, zeros: ZeroCountCoefficients, x: float,
            log_t0: float) -> DensityEstimate:
    """``C1 = K b1``, ``C2 = K b2 / (nu(T0) log T0)`` with ``K = (c2+c3+c4)/(c1^2-c5)``."""
    k = (detector.c2 + detector.c3 + detector.c4) / detector.margin
    nu0 = region_width(log_t0)
    return DensityEstimate(B=2 * x, C1_part=k * zeros.b1, C2_part=k * zeros.b2 / (nu0 * log_t0))


def assemble_row(spec: RangeSpec, p: ParamVector, *, d3_mode: D3Mode | None = None,
                 j_mode: JMode = JMode.CERTIFIED, strict_residue: bool = False,
                 shift: float = SHIFT_COROLLARY) -> RowResult:
    """Compute every constant for one row.

    Raises:
        InvalidRowError: when the detector gates fail.
    """
    d = divisor_sum_constants(spec, p, d3_mode)
    z = fit_rectangle_count(spec, shift)
    c = detector_constants(spec, p, d.d21, d.d4, d.d5, j_mode=j_mode, strict_residue=strict_residue)
    return RowResult(spec, p, d, z, c, combine(c, z, p.x, spec.log_t0))


def evaluate_bound(est: DensityEstimate, spec: RangeSpec, sigma: float, log_t: float) -> float:
    """``C T^{B(1-sigma)}`` for ``sigma in [alpha0, 1]``, ``T in (T0, T1]``.

    Returns ``inf`` if the value overflows binary64; use
    :meth:`DensityEstimate.log_bound` for such heights.
    """
    if not spec.contains(sigma, log_t):
        raise DomainError(f"(sigma, log T) = ({sigma!r}, {log_t!r}) outside the row")
    try:
        return math.exp(est.log_bound(sigma, log_t))
    except OverflowError:
        return math.inf


# --- schedule ----------------------------------------------------------------

@dataclass(frozen=True)
class ScheduleRow:
    spec: RangeSpec
    params: ParamVector
    published: dict = field(default_factory=dict, compare=False)


def _row_from_strings(values: dict) -> ScheduleRow:
    spec = RangeSpec(parse_height(values["T0"]), parse_height(values["T1"]), float(values["alpha0"]))
    params = ParamVector(*(float(values[k]) for k in ("u", "v", "w", "x")))
    return ScheduleRow(spec, params, dict(values))


def default_schedule() -> list[ScheduleRow]:
    """The 38 tabulated rows followed by the uniform row up to ``exp(6.7e12)``."""
    rows = [_row_from_strings(r.values) for r in published_rows()]
    rows.append(_row_from_strings(UNIFORM_ROW))
    return rows


# --- display -------------------------------------------------------------------

def display_C(value: float) -> str:
    """Two decimals below 1e6, three significant digits above."""
    if value < 1e6:
        return f"{value:.2f}"
    mantissa, exponent = f"{value:.2e}".split("e")
    return f"{mantissa}e{int(exponent)}"


def display_B(value: float) -> str:
    """Three decimals, rounded up (B is an upper bound; the tables round up too)."""
    return str(Decimal(repr(value)).quantize(Decimal("0.001"), rounding=ROUND_CEILING))


def schedule_to_json_rows(rows: list[ScheduleRow]) -> list[dict]:
    return [
        {"t0_log": r.spec.log_t0, "t1_log": r.spec.log_t1, "alpha0": r.spec.alpha0,
         **{k: getattr(r.params, k) for k in ("u", "v", "w", "x")}}
        for r in rows
    ]


def schedule_from_json_rows(items: list[dict]) -> list[ScheduleRow]:
    out = []
    for item in items:
        spec = RangeSpec(float(item["t0_log"]), float(item["t1_log"]), float(item["alpha0"]))
        out.append(ScheduleRow(spec, ParamVector(*(float(item[k]) for k in ("u", "v", "w", "x")))))
    return out


__all__ = [
    "DensityEstimate", "RowResult", "ScheduleRow", "assemble_row", "combine", "default_schedule",
    "display_B", "display_C", "evaluate_bound", "schedule_from_json_rows", "schedule_to_json_rows",
    "asdict",
]

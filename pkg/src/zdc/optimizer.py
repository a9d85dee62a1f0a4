"""Seeded annealing search over the exponents ``(u, v, w, x)`` of one row.

Infeasible proposals (ordering constraints, ``c1 <= 0``, ``c1^2 <= c5``) are
rejected rather than penalised, so every evaluated point carries a valid
estimate.  The temperature decays geometrically, x0.95 per 100 proposals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .arith import D3Mode, divisor_sum_constants
from .detector import JMode, detector_constants
from .foundations import DomainError
from .params import ParamVector, RangeSpec
from .pipeline import DensityEstimate, combine
from .zerocount import ZeroCountCoefficients, fit_rectangle_count

DECAY = 0.95
DECAY_EVERY = 100
RANDOM_START_TRIES = 20_000


class Objective(str, enum.Enum):
    MIN_BOUND_AT_ALPHA0_T1 = "MinBoundAtAlpha0T1"
    MIN_B = "MinB"
    MIN_C = "MinC"


class NoFeasiblePoint(DomainError):
    """The search budget ran out before a feasible point was found."""


@dataclass(frozen=True)
class SearchConfig:
    """Settings of one annealing chain.

    Attributes:
        seed: seed of the PCG64 generator.
        iterations: number of proposals; 0 returns the initial point.
        initial: starting exponents, or ``None`` for a random feasible start.
        step_scales: standard deviations of the Gaussian steps per coordinate;
            ``None`` uses 2% of each initial coordinate.
        objective: quantity minimised.
        temperature: initial temperature, in units of the objective.
    """

    seed: int = 0
    iterations: int = 1000
    initial: ParamVector | None = None
    step_scales: tuple[float, float, float, float] | None = None
    objective: Objective = Objective.MIN_BOUND_AT_ALPHA0_T1
    temperature: float = 0.05
    d3_mode: D3Mode | None = field(default=None, compare=False)
    j_mode: JMode = field(default=JMode.CERTIFIED, compare=False)

    def __post_init__(self):
        if self.iterations < 0:
            raise ValueError("iterations must be non-negative")
        if self.step_scales is not None and min(self.step_scales) <= 0:
            raise ValueError("step_scales must be positive")
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")


def objective_value(est: DensityEstimate, spec: RangeSpec, objective: Objective) -> float:
    if objective is Objective.MIN_B:
        return est.B
    if objective is Objective.MIN_C:
        return math.log(est.C)
    return est.log_bound(spec.alpha0, spec.log_t1)


class _Evaluator:
    """Row estimate with the parameter-independent zero-count fit cached."""

    def __init__(self, spec: RangeSpec, cfg: SearchConfig):
        self.spec = spec
        self.cfg = cfg
        self.zeros: ZeroCountCoefficients = fit_rectangle_count(spec)

    def __call__(self, p: ParamVector) -> DensityEstimate:
        d = divisor_sum_constants(self.spec, p, self.cfg.d3_mode)
        c = detector_constants(self.spec, p, d.d21, d.d4, d.d5, j_mode=self.cfg.j_mode)
        est = combine(c, self.zeros, p.x, self.spec.log_t0)
        if not math.isfinite(est.C):
            raise DomainError("non-finite C")
        return est

    def try_eval(self, coords) -> tuple[ParamVector, DensityEstimate] | None:
        try:
            p = ParamVector(*(float(c) for c in coords))
            return p, self(p)
        except (DomainError, FloatingPointError, OverflowError, ZeroDivisionError):
            return None


def random_feasible_start(spec: RangeSpec, rng: np.random.Generator,
                          evaluator: _Evaluator | None = None) -> ParamVector:
    """Sample ``0 < w < u < v``, ``x > u + v`` uniformly until the row is valid."""
    evaluator = evaluator or _Evaluator(spec, SearchConfig())
    for _ in range(RANDOM_START_TRIES):
        w = rng.uniform(0.0, 1.0)
        u = w + rng.uniform(0.0, 3.0)
        v = u + rng.uniform(0.0, 4.0)
        x = u + v + rng.uniform(0.0, 3.0)
        hit = evaluator.try_eval((u, v, w, x))
        if hit is not None:
            return hit[0]
    raise NoFeasiblePoint("no feasible random start found")


def optimize_row(spec: RangeSpec, cfg: SearchConfig) -> tuple[ParamVector, DensityEstimate]:
    """Minimise ``cfg.objective`` over feasible exponents; deterministic in ``cfg.seed``.

    Returns:
        The best point found and its estimate.  The objective there is never
        above the objective at the initial point.

    Raises:
        NoFeasiblePoint: if the initial point (or every random start) is infeasible.
    """
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    evaluate = _Evaluator(spec, cfg)
    start = cfg.initial if cfg.initial is not None else random_feasible_start(spec, rng, evaluate)
    hit = evaluate.try_eval(start.as_tuple())
    if hit is None:
        raise NoFeasiblePoint(f"initial point {start} is infeasible")
    cur_p, cur_est = hit
    cur_f = objective_value(cur_est, spec, cfg.objective)
    best = (cur_p, cur_est, cur_f)
    scales = np.asarray(cfg.step_scales if cfg.step_scales is not None
                        else [0.02 * abs(c) for c in start.as_tuple()], dtype=float)
    temp = cfg.temperature
    for k in range(1, cfg.iterations + 1):
        proposal = np.asarray(cur_p.as_tuple()) + scales * rng.standard_normal(4)
        accept_draw = rng.random()
        hit = evaluate.try_eval(proposal)
        if hit is not None:
            f = objective_value(hit[1], spec, cfg.objective)
            if f <= cur_f or accept_draw < math.exp(-(f - cur_f) / temp):
                cur_p, cur_est, cur_f = hit[0], hit[1], f
                if f < best[2]:
                    best = (cur_p, cur_est, f)
        if k % DECAY_EVERY == 0:
            temp *= DECAY
    return best[0], best[1]


def optimize_multi(spec: RangeSpec, cfg: SearchConfig, seeds) -> tuple[ParamVector, DensityEstimate]:
    """Independent chains, one per seed; the best objective wins (ties: first seed)."""
    results = []
    for s in seeds:
        p, est = optimize_row(spec, SearchConfig(s, cfg.iterations, cfg.initial, cfg.step_scales,
                                                 cfg.objective, cfg.temperature, cfg.d3_mode, cfg.j_mode))
        results.append((objective_value(est, spec, cfg.objective), p, est))
    f, p, est = min(results, key=lambda r: r[0])
    return p, est

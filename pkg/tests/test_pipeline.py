import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zdc.detector import DetectorConstants
from zdc.foundations import DomainError, LOG_MAX_HEIGHT, LOG_RIEMANN_HEIGHT
from zdc.pipeline import (
    DensityEstimate, combine, display_B, display_C, evaluate_bound, schedule_from_json_rows,
    schedule_to_json_rows,
)
from zdc.zerocount import ZeroCountCoefficients


def reassemble(row):
    pub = row.published
    c = DetectorConstants(*(float(pub[k]) for k in ("c1", "c2", "c3", "c4", "c5")))
    z = ZeroCountCoefficients(float(pub["b1"]), float(pub["b2"]))
    return combine(c, z, row.params.x, row.spec.log_t0)


def test_first_row_by_hand(first):
    pub = first.published
    k = float(pub["c2"]) + float(pub["c3"]) + float(pub["c4"])
    assert k == pytest.approx(2704.13, abs=0.01)
    assert float(pub["c1"]) ** 2 - float(pub["c5"]) == pytest.approx(0.9004, abs=1e-4)
    assert reassemble(first).C == pytest.approx(37341.72, rel=0.005)


REASSEMBLY_OUTLIER = 31  # (e^170.2, e^500]: printed 1.12e6, its own columns give 1.1121e6


def test_reassembly_every_row(schedule):
    for i, row in enumerate(schedule[:38]):
        if i != REASSEMBLY_OUTLIER:
            assert reassemble(row).C == pytest.approx(float(row.published["C"]), rel=0.005)


def test_reassembly_outlier_is_known(schedule):
    row = schedule[REASSEMBLY_OUTLIER]
    dev = reassemble(row).C / float(row.published["C"]) - 1
    assert -0.01 < dev < -0.005


def test_row_2500_3000(reproduced):
    r = reproduced[36]
    assert r.result.estimate.C == pytest.approx(2.56e8, rel=0.02)
    assert display_B(r.result.estimate.B) == "1.577"


def test_first_row_estimate(reproduced):
    est = reproduced[0].result.estimate
    assert est.B == 2 * 7.0798370
    assert display_B(est.B) == "14.160"
    assert est.C == pytest.approx(37341.72, rel=0.02)


def test_zero_numerator():
    est = combine(DetectorConstants(0.99, 0.0, 0.0, 0.0, 0.05), ZeroCountCoefficients(0.71, 2.1), 7.0, 30.0)
    assert est.C == 0.0


def test_schedule_shape(schedule):
    assert len(schedule) == 39
    for a, b in zip(schedule, schedule[1:]):
        assert a.spec.log_t1 == b.spec.log_t0
    assert schedule[0].spec.log_t0 == LOG_RIEMANN_HEIGHT
    assert schedule[-1].spec.log_t1 == LOG_MAX_HEIGHT


def test_uniform_row_exponent(reproduced):
    est = reproduced[38].result.estimate
    assert est.B == pytest.approx(1.4477476, abs=1e-12)
    assert display_B(est.B) == "1.448"


def test_published_trends(published):
    C = [r.num("C") for r in published]
    B = [r.num("B") for r in published]
    assert all(b2 < b1 for b1, b2 in zip(B, B[1:]))
    assert all(c2 >= c1 for c1, c2 in zip(C, C[1:]))
    assert all(r.num("B") < 2 for r in published if r.log_t0 >= 1000)


def test_recomputed_trends(reproduced):
    B = [r.result.estimate.B for r in reproduced]
    assert all(b2 < b1 for b1, b2 in zip(B, B[1:]))
    assert all(r.result.estimate.B < 2 for r in reproduced if r.row.spec.log_t0 >= 1000)


def test_evaluate_bound_examples(reproduced):
    r = reproduced[0]
    est, spec = r.result.estimate, r.row.spec
    assert evaluate_bound(est, spec, 1.0, 29.0) == pytest.approx(est.C, rel=1e-15)
    expected = est.C * math.exp(29 * est.B * (1 - 0.9927))
    assert evaluate_bound(est, spec, 0.9927, 29.0) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(DomainError):
        evaluate_bound(est, spec, 0.99, 29.0)
    with pytest.raises(DomainError):
        evaluate_bound(est, spec, 0.995, 30.0)


def test_evaluate_bound_overflow(reproduced):
    r = reproduced[38]
    assert evaluate_bound(r.result.estimate, r.row.spec, 0.985, 1e12) == math.inf
    assert math.isfinite(r.result.estimate.log_bound(0.985, 1e12))


@given(st.integers(0, 37), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
@settings(max_examples=200, deadline=None)
def test_evaluate_bound_monotone(index, s1, s2, t1, t2):
    from zdc.pipeline import default_schedule

    spec = default_schedule()[index].spec
    est = DensityEstimate(B=2 + index / 10, C1_part=10.0, C2_part=1000.0)
    sig = sorted(spec.alpha0 + (1 - spec.alpha0) * s for s in (s1, s2))
    lt = sorted(spec.log_t0 + (spec.log_t1 - spec.log_t0) * max(t, 1e-9) for t in (t1, t2))
    assert est.log_bound(sig[0], lt[1]) >= est.log_bound(sig[0], lt[0])
    assert est.log_bound(sig[0], lt[0]) >= est.log_bound(sig[1], lt[0])


@pytest.mark.parametrize("value, text", [(37341.7249, "37341.72"), (1.1234e6, "1.12e6"),
                                         (2.5612e8, "2.56e8"), (1.62e11, "1.62e11")])
def test_display_C(value, text):
    assert display_C(value) == text


@pytest.mark.parametrize("value, text", [(14.159674, "14.160"), (13.587389, "13.588"), (1.4477476, "1.448")])
def test_display_B_rounds_up(value, text):
    assert display_B(value) == text


def test_displayed_B_matches_every_row(reproduced):
    for r in reproduced[:38]:
        assert display_B(r.result.estimate.B) == r.row.published["B"]


def test_schedule_json_round_trip(schedule):
    text = json.dumps(schedule_to_json_rows(schedule))
    back = schedule_from_json_rows(json.loads(text))
    assert [(r.spec, r.params) for r in back] == [(r.spec, r.params) for r in schedule]


def test_record_fields(reproduced):
    rec = reproduced[0].result.record()
    for key in ("d11", "d12", "d21", "d22", "d3", "mode", "d4", "d5", "b1", "b2",
                "c1", "c2", "c3", "c4", "c5", "C1_part", "C2_part", "C", "B"):
        assert key in rec
    assert rec["mode"] == "literal"
    assert rec["C"] == pytest.approx(rec["C1_part"] + rec["C2_part"])

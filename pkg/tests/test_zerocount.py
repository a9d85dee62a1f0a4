import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zdc.foundations import DomainError, LOG_RIEMANN_HEIGHT
from zdc.params import RangeSpec
from zdc.zerocount import (
    SHIFT_COROLLARY, SHIFT_LEMMA, ZeroCountCoefficients, _split, fit_rectangle_count,
    local_zero_count_bound, reciprocal_count_bound,
)

FIRST_ROW_VALUE = 2.2579246569054985  # frozen: direct evaluation at r = sqrt(2)*0.0073, T = 3e12


def test_first_row_value():
    value = local_zero_count_bound(math.sqrt(2) * 0.0073, LOG_RIEMANN_HEIGHT)
    assert value == pytest.approx(2.258, abs=5e-4)
    assert value == pytest.approx(FIRST_ROW_VALUE, rel=1e-14)
    assert value <= 0.711 * 0.0073 * LOG_RIEMANN_HEIGHT + 2.113


def test_small_radius_limit():
    assert local_zero_count_bound(1e-12, 40.0) == pytest.approx(2.0, abs=1e-9)


def test_monotone_in_height():
    assert local_zero_count_bound(0.01, 50.0) >= local_zero_count_bound(0.01, 40.0)


def test_shift_variants_ordered():
    assert local_zero_count_bound(0.01, 50.0, SHIFT_COROLLARY) > local_zero_count_bound(0.01, 50.0, SHIFT_LEMMA)


@pytest.mark.parametrize("r", [0.0, -0.1, 0.5, 0.7])
def test_radius_domain(r):
    with pytest.raises(DomainError):
        local_zero_count_bound(r, 40.0)


def test_split_matches_bound():
    r = np.geomspace(1e-4, 0.4, 30)
    a, b = _split(r)
    for L in (30.0, 500.0):
        assert np.allclose(a * L + b, local_zero_count_bound(r, L), rtol=1e-13)


@pytest.mark.parametrize("L", [28.7, 100.0, 1e4, 1e6])
def test_reciprocal_display_consistent(L):
    r = np.geomspace(0.001, 0.1, 60)
    first = local_zero_count_bound(r, L)
    second = reciprocal_count_bound(1 / r, L)
    assert np.all(second >= first)
    small = r <= 0.01
    assert np.all(second[small] / first[small] - 1 < 0.025)


@pytest.mark.parametrize("index, b1, b2", [(0, 0.711, 2.113), (22, 0.721, 2.235)])
def test_fit_against_table(schedule, index, b1, b2):
    coeffs = fit_rectangle_count(schedule[index].spec)
    assert coeffs.b2 == pytest.approx(b2, rel=2e-3)
    # b1 is the alpha -> 1 limit sqrt(2)/2; the table is 0.6-1.9% above
    assert coeffs.b1 == pytest.approx(b1, rel=0.02)
    assert coeffs.b1 >= math.sqrt(2) / 2


def test_b2_limit_at_alpha_one():
    _, b = _split(np.array([1e-12]))
    assert b[0] == pytest.approx(2.0, abs=1e-9)


def test_coefficients_validated():
    with pytest.raises(ValueError):
        ZeroCountCoefficients(0.7, 1.9)
    with pytest.raises(ValueError):
        ZeroCountCoefficients(0.0, 2.1)


def test_fit_domain():
    class Loose:  # bypass RangeSpec validation to reach the fit's own gate
        log_t0, log_t1, alpha0 = 30.0, 31.0, 0.95
    with pytest.raises(DomainError):
        fit_rectangle_count(Loose())


def test_b_nondecreasing_as_alpha0_decreases():
    fits = [fit_rectangle_count(RangeSpec(40.0, 41.0, a)) for a in (0.9927, 0.99, 0.9875, 0.985)]
    for wide, narrow in zip(fits[1:], fits[:-1]):
        assert wide.b1 >= narrow.b1 and wide.b2 >= narrow.b2


@given(st.integers(0, 38), st.integers(0, 2**32 - 1))
@settings(max_examples=10, deadline=None)
def test_fit_dominates_random_points(index, seed):
    from zdc.pipeline import default_schedule

    spec = default_schedule()[index].spec
    coeffs = fit_rectangle_count(spec)
    rng = np.random.default_rng(seed)
    alpha = rng.uniform(spec.alpha0, 1, 2000)
    alpha = alpha[alpha < 1]
    log_t = np.exp(rng.uniform(math.log(spec.log_t0), math.log(spec.log_t1), alpha.size))
    exact = local_zero_count_bound(math.sqrt(2) * (1 - alpha), log_t)
    assert np.all(coeffs.count(alpha, log_t) >= exact)

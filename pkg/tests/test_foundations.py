import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zdc.foundations import (
    LOG_FORD_START, LOG_KOROBOV_START, LOG_LITTLEWOOD_START, LOG_MAX_HEIGHT, LOG_RIEMANN_HEIGHT,
    DomainError, ZeroFreeRegionKind as K, gamma_near_real_bound, region_width, select_region,
    stirling_gamma_bound, up, down, zero_free_width, zeta_halfline_bound,
)

# Frozen from 30-digit mpmath evaluations of the closed forms.
CLASSICAL_AT_46_2 = 0.00389390625329266279
LITTLEWOOD_AT_170_2 = 0.00142146598073074448
STIRLING_HALF_10 = 3.84093869492158137e-7
STIRLING_NEG_3 = 0.00805726855923288182
ZETA_MEDIUM_E50 = 128552.095966089176
ZETA_LARGE_E110 = 4887569834.19691974

BOUNDARIES = [
    (LOG_FORD_START, K.CLASSICAL, K.FORD),
    (LOG_LITTLEWOOD_START, K.FORD, K.LITTLEWOOD),
    (LOG_KOROBOV_START, K.LITTLEWOOD, K.KOROBOV_VINOGRADOV),
]


def test_classical_width():
    assert zero_free_width(K.CLASSICAL, 46.2) == pytest.approx(CLASSICAL_AT_46_2, rel=1e-14)
    assert zero_free_width(K.CLASSICAL, LOG_RIEMANN_HEIGHT) == 1 / (5.558691 * math.log(3e12))


def test_littlewood_width():
    assert zero_free_width(K.LITTLEWOOD, 170.2) == pytest.approx(LITTLEWOOD_AT_170_2, rel=1e-14)


def test_width_rejects_small_height():
    with pytest.raises(DomainError):
        zero_free_width(K.FORD, 1.0)


@pytest.mark.parametrize("log_t, kind", [
    (math.log(1e13), K.CLASSICAL),
    (100.0, K.FORD),
    (46.2, K.CLASSICAL),
    (170.2, K.FORD),
    (1000.0, K.LITTLEWOOD),
    (1e6, K.KOROBOV_VINOGRADOV),
])
def test_select_region(log_t, kind):
    assert select_region(log_t) is kind


@pytest.mark.parametrize("log_t", [LOG_RIEMANN_HEIGHT - 1, LOG_MAX_HEIGHT * 1.0001])
def test_select_region_domain(log_t):
    with pytest.raises(DomainError):
        select_region(log_t)


@pytest.mark.parametrize("kind", list(K))
def test_widths_strictly_decreasing(kind):
    grid = np.geomspace(LOG_RIEMANN_HEIGHT, LOG_MAX_HEIGHT, 2000)
    widths = np.array([zero_free_width(kind, L) for L in grid])
    assert np.all(np.diff(widths) < 0)


@pytest.mark.parametrize("boundary, before, after", BOUNDARIES)
def test_boundary_switch_to_wider_region(boundary, before, after):
    # The printed boundaries are rounded crossover heights: at the boundary the
    # incoming region is within 1e-4 relative of the outgoing one (not 1e-12).
    assert zero_free_width(after, boundary) >= zero_free_width(before, boundary) * (1 - 1e-4)
    # and a little past the boundary the incoming region is strictly wider
    assert zero_free_width(after, boundary * 1.001) > zero_free_width(before, boundary * 1.001)


@pytest.mark.parametrize("boundary, before, after", BOUNDARIES)
def test_crossover_next_to_printed_boundary(boundary, before, after):
    from scipy.optimize import brentq

    cross = brentq(lambda L: zero_free_width(after, L) - zero_free_width(before, L),
                   boundary * 0.99, boundary * 1.01, xtol=1e-12)
    assert abs(cross - boundary) / boundary < 5e-4


def test_region_width_matches_selection():
    for L in (30.0, 100.0, 300.0, 1e7):
        assert region_width(L) == zero_free_width(select_region(L), L)


def test_up_down():
    assert up(1.0) > 1.0 and down(1.0) < 1.0
    assert up(1.0) == np.nextafter(1.0, 2.0)


def test_stirling_examples():
    assert stirling_gamma_bound(0.5, 10.0) == pytest.approx(STIRLING_HALF_10, rel=1e-12)
    assert stirling_gamma_bound(-0.4854, 3.0) == pytest.approx(STIRLING_NEG_3, rel=1e-12)


@given(st.floats(-1, 1.4), st.floats(1, 50))
@settings(max_examples=200, deadline=None)
def test_stirling_dominates_gamma(sigma, t):
    exact = float(abs(mp.gamma(mp.mpc(sigma, t))))
    assert stirling_gamma_bound(sigma, t) >= exact
    assert stirling_gamma_bound(sigma, -t) == stirling_gamma_bound(sigma, t)


def test_stirling_fails_for_large_sigma_small_t():
    # The printed inequality is not valid on all of sigma in [-1, 2]; it breaks
    # for sigma >= 1.5 near |t| = 1.  Every use has sigma <= 1/2.
    assert stirling_gamma_bound(2.0, 1.0) < float(abs(mp.gamma(mp.mpc(2.0, 1.0))))


def test_stirling_rejects_real_axis():
    with pytest.raises(DomainError):
        stirling_gamma_bound(0.5, 0.0)


def test_gamma_near_real():
    delta = 1 - 0.985
    assert gamma_near_real_bound(2 * delta) == pytest.approx(1.0067 / (2 * delta))
    assert gamma_near_real_bound(1.0) == 1.0067
    with pytest.raises(DomainError):
        gamma_near_real_bound(0.0)


def test_gamma_integral_cap():
    sup = max(float(mp.quad(lambda t: t**x * mp.exp(-t), [0, 1, mp.inf]))
              for x in np.linspace(1e-6, 0.03, 16))
    assert sup <= 1.0067


def test_zeta_halfline_branches():
    assert zeta_halfline_bound(2.0) == 1.461
    assert zeta_halfline_bound(math.exp(50)) == pytest.approx(ZETA_MEDIUM_E50, rel=1e-12)
    assert zeta_halfline_bound(math.exp(110)) == pytest.approx(ZETA_LARGE_E110, rel=1e-12)


@given(st.floats(0, 1e40))
def test_zeta_halfline_even(t):
    assert zeta_halfline_bound(t) == zeta_halfline_bound(-t)

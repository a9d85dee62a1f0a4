"""Pure numpy fallback for the sieve and divisor-sum kernels."""

from __future__ import annotations

import numpy as np


def _primes_upto(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


def linear_sieve(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(mu, d)`` for ``0..n``: the Moebius function and divisor count."""
    if n < 1:
        raise ValueError("n must be at least 1")
    mu = np.ones(n + 1, dtype=np.int8)
    d = np.ones(n + 1, dtype=np.int32)
    mu[0] = 0
    d[0] = 0
    for p in _primes_upto(n):
        p = int(p)
        mu[p::p] *= -1
        d[p::p] *= 2
        pk, k = p * p, 2
        if pk <= n:
            mu[pk::pk] = 0
        # d carries the factor k for multiples of p^(k-1); bump it to k+1
        while pk <= n:
            d[pk::pk] = d[pk::pk] // k * (k + 1)
            pk *= p
            k += 1
    return mu, d


def divisor_sum(weights: np.ndarray, n: int) -> np.ndarray:
    """``S[m] = sum_{k | m, k < len(weights)} weights[k]`` for ``m = 0..n``."""
    weights = np.asarray(weights, dtype=np.float64)
    out = np.zeros(n + 1, dtype=np.float64)
    top = min(len(weights) - 1, n)
    for k in np.flatnonzero(weights[1 : top + 1]) + 1:
        out[k::k] += weights[k]
    return out

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieve and divisor-sum kernels (see ``_kernels_py`` for the reference)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def linear_sieve(Py_ssize_t n):
    """Return ``(mu, d)`` for ``0..n``: the Moebius function and divisor count."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cdef cnp.ndarray[cnp.int8_t, ndim=1] mu = np.zeros(n + 1, dtype=np.int8)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] d = np.zeros(n + 1, dtype=np.int32)
    # exponent of the smallest prime factor, needed to update d multiplicatively
    cdef cnp.ndarray[cnp.int32_t, ndim=1] e = np.zeros(n + 1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] primes = np.empty(n // 2 + 2, dtype=np.int32)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] composite = np.zeros(n + 1, dtype=np.uint8)
    cdef Py_ssize_t i, j, p, m, count = 0
    mu[1] = 1
    d[1] = 1
    for i in range(2, n + 1):
        if not composite[i]:
            primes[count] = i
            count += 1
            mu[i] = -1
            d[i] = 2
            e[i] = 1
        for j in range(count):
            p = primes[j]
            m = i * p
            if m > n:
                break
            composite[m] = 1
            if i % p == 0:
                mu[m] = 0
                e[m] = e[i] + 1
                d[m] = d[i] // (e[i] + 1) * (e[i] + 2)
                break
            mu[m] = -mu[i]
            e[m] = 1
            d[m] = d[i] * 2
    return mu, d


def divisor_sum(cnp.ndarray[cnp.float64_t, ndim=1] weights, Py_ssize_t n):
    """``S[m] = sum_{k | m, k < len(weights)} weights[k]`` for ``m = 0..n``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n + 1, dtype=np.float64)
    cdef Py_ssize_t k, m, top = min(weights.shape[0] - 1, n)
    cdef double wk
    for k in range(1, top + 1):
        wk = weights[k]
        if wk == 0.0:
            continue
        m = k
        while m <= n:  # explicit loop: a range() with a runtime step is not lowered to C
            out[m] += wk
            m += k
    return out

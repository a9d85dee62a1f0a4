"""Kernel dispatch: the compiled extension when built, numpy otherwise.

Set ``ZDC_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
the parity tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
linear_sieve = _kernels_py.linear_sieve
divisor_sum = _kernels_py.divisor_sum

if not os.environ.get("ZDC_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        linear_sieve = _ckernels.linear_sieve
        divisor_sum = _ckernels.divisor_sum

__all__ = ["BACKEND", "linear_sieve", "divisor_sum"]

"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--sizes 100000 1000000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from zdc import _kernels_py

try:
    from zdc import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def best_of(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[10**5, 10**6])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
    backends = {"python": _kernels_py, **({"cython": _ckernels} if _ckernels else {})}

    print(f"{'kernel':<14}{'n':>10}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        mu, _ = _kernels_py.linear_sieve(n)
        # psi-like weights supported on d <= sqrt(n), as in the oracle sums
        weights = mu[: int(n**0.5) + 1].astype(float) * np.random.default_rng(0).random(int(n**0.5) + 1)
        cases = {
            "linear_sieve": lambda mod: mod.linear_sieve(n),
            "divisor_sum": lambda mod: mod.divisor_sum(weights, n),
        }
        for name, call in cases.items():
            times = {b: best_of(lambda m=mod: call(m), args.repeat) for b, mod in backends.items()}
            speed = times["python"] / times["cython"] if "cython" in times else float("nan")
            print(f"{name:<14}{n:>10}" + "".join(f"{t:>11.4f}s" for t in times.values()) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()

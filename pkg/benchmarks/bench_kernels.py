"""Compare the numba and pure-numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so the environment flag is irrelevant
here.  The memory-sum case mirrors the direct solver's inner loop at the
largest path length of a 10^4-step run.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from nonlocal_embed.kernels import _numba, _numpy


def cases(rng: np.random.Generator):
    z = rng.uniform(-50.0, 50.0, 4096)
    n = 10_000
    times = np.linspace(0.0, 100.0, n)
    xs = np.cumsum(rng.normal(scale=0.01, size=n))
    w = rng.uniform(size=2001)
    h = rng.normal(size=2001) + 1j * rng.normal(size=2001)
    return {
        "bessel_j1 (4096 pts)": lambda m: m.bessel_j1(z),
        "trapezoid_memory (n=1e4)": lambda m: m.trapezoid_memory(times, xs, n - 1, 100.0, xs[-1], 0.1),
        "weighted_real_sum (2001)": lambda m: m.weighted_real_sum(w, h),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<28s} {'numba [us]':>12s} {'numpy [us]':>12s} {'speedup':>8s}")
    for name, fn in cases(rng).items():
        fn(_numba)  # compile
        # timings only mean something if the backends agree
        np.testing.assert_allclose(fn(_numba), fn(_numpy), rtol=1e-12, atol=1e-14)
        t_nb = min(timeit.repeat(lambda: fn(_numba), number=args.repeat, repeat=3)) / args.repeat
        t_np = min(timeit.repeat(lambda: fn(_numpy), number=args.repeat, repeat=3)) / args.repeat
        print(f"{name:<28s} {t_nb * 1e6:>12.2f} {t_np * 1e6:>12.2f} {t_np / t_nb:>8.1f}")


if __name__ == "__main__":
    main()

"""Time the compiled Orlicz kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--atoms 2 8 64] [--repeat 200]
"""

import argparse
import timeit

import numpy as np

from infogeo import _fallback
from infogeo._backend import BACKEND


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--atoms", type=int, nargs="+", default=[2, 8, 64])
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()

    if BACKEND != "cython":
        print("compiled kernels unavailable; only the fallback can be timed")
    else:
        from infogeo import _kernels

    rng = np.random.default_rng(0)
    print(f"{'kernel':<10} {'atoms':>5} {'cython us':>10} {'python us':>10} {'speedup':>8}")
    for n in args.atoms:
        mw = rng.uniform(0.1, 1.0, n)
        mw /= mw.sum()
        f = rng.standard_normal(n) * 2
        for name in ("luxemburg", "amemiya"):
            slow = timeit.timeit(lambda: getattr(_fallback, name)(1, mw, f), number=args.repeat)
            slow_us = 1e6 * slow / args.repeat
            if BACKEND == "cython":
                fast = timeit.timeit(lambda: getattr(_kernels, name)(1, mw, f), number=args.repeat)
                fast_us = 1e6 * fast / args.repeat
                print(f"{name:<10} {n:>5} {fast_us:>10.1f} {slow_us:>10.1f} {slow_us / fast_us:>7.1f}x")
            else:
                print(f"{name:<10} {n:>5} {'-':>10} {slow_us:>10.1f} {'-':>8}")


if __name__ == "__main__":
    main()

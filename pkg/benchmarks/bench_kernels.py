"""Benchmark the two exponential-sum table strategies.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Times full-table builds for the direct (gather + pairwise sum) and dft
(BLAS matrix product) kernels over a range of primes and dimensions,
and checks that both strategies agree.
"""

import argparse
import time

import numpy as np

from talbot._kernels import table_values
from talbot.intpoly import diagonal_power, parse_poly


def bench_one(poly, q, strategy, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        vals = table_values(poly, q, strategy=strategy, force=True)
        best = min(best, time.perf_counter() - t0)
    return best, vals


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    # direct cost grows like q^(2d+1); keep it where that stays sane
    cases = [(diagonal_power(3, 1), q, True) for q in (31, 101, 301)]
    cases += [(diagonal_power(3, 1), 601, False)]
    cases += [(parse_poly("x0^3+x1^3", 2), q, q <= 31) for q in (13, 31, 61, 101)]

    print(f"{'poly':>14} {'q':>5} {'direct (s)':>11} {'dft (s)':>9} "
          f"{'speedup':>8} {'max |diff|':>11}")
    for poly, q, with_direct in cases:
        tf, vf = bench_one(poly, q, "dft", args.repeat)
        if with_direct:
            td, vd = bench_one(poly, q, "direct", args.repeat)
            diff = float(np.abs(vd - vf).max())
            print(f"{poly.canonical():>14} {q:>5} {td:>11.4f} {tf:>9.4f} "
                  f"{td / tf:>8.1f} {diff:>11.2e}")
        else:
            print(f"{poly.canonical():>14} {q:>5} {'-':>11} {tf:>9.4f} "
                  f"{'-':>8} {'-':>11}")


if __name__ == "__main__":
    main()

"""Timing of the trigonometric grid kernel: numba versus the numpy fallback.

Usage: python benchmarks/bench_grid.py [--points N] [--terms M] [--repeat R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cwquot._kernels import NUMBA_AVAILABLE, grid_values


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=1 << 16)
    parser.add_argument("--terms", type=int, default=64)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    exps = np.arange(1, args.terms + 1, dtype=np.float64)
    re, im = rng.normal(size=args.terms), rng.normal(size=args.terms)
    d0 = float(rng.normal())

    ref = grid_values(exps, re, im, d0, args.points, use_numba=False)
    t_np = _best_of(lambda: grid_values(exps, re, im, d0, args.points, use_numba=False), args.repeat)
    print(f"grid: {args.points} points, {args.terms} terms")
    print(f"numpy  {t_np * 1e3:9.2f} ms")
    if not NUMBA_AVAILABLE:
        print("numba  not installed")
        return
    grid_values(exps, re, im, d0, 16, use_numba=True)  # compile outside the timing
    out = grid_values(exps, re, im, d0, args.points, use_numba=True)
    t_nb = _best_of(lambda: grid_values(exps, re, im, d0, args.points, use_numba=True), args.repeat)
    print(f"numba  {t_nb * 1e3:9.2f} ms  (speedup {t_np / t_nb:.1f}x, max diff {np.max(np.abs(out - ref)):.1e})")


if __name__ == "__main__":
    main()

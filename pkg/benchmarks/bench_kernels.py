"""Compare the numba kernels with their fallbacks.

    python3 benchmarks/bench_kernels.py [--sample 20000] [--repeat 3]

Prints one line per kernel with the best wall time of each path and the
speed-up.  The first numba call is excluded from timing (compilation).
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from rooktours import kernels
from rooktours.search import sample_connections


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_batch(sample: int, repeat: int) -> None:
    conn = sample_connections((8, 8), sample, seed=7)
    kernels.batch_invariants(conn[:4], use_numba=True)
    fast = best_of(lambda: kernels.batch_invariants(conn, use_numba=True), repeat)
    slow = best_of(lambda: kernels.batch_invariants(conn, use_numba=False), repeat)
    same = np.array_equal(kernels.batch_invariants(conn, True), kernels.batch_invariants(conn, False))
    print(f"batch_invariants 8x8 x{sample}: numba {fast:.3f}s  numpy {slow:.3f}s  "
          f"speed-up {slow / fast:.1f}x  identical={same}")


def bench_oracle(n: int, m: int, repeat: int) -> None:
    out = np.zeros((0, n * m), dtype=np.int64)
    kernels._naive_walk_nb(2, 2, np.zeros((0, 4), dtype=np.int64))
    fast = best_of(lambda: kernels._naive_walk_nb(n, m, out), repeat)
    slow = best_of(lambda: kernels._naive_walk_py(n, m, out), 1)
    count = kernels._naive_walk_nb(n, m, out)
    print(f"naive oracle {n}x{m} ({count} cycles): numba {fast:.4f}s  python {slow:.3f}s  "
          f"speed-up {slow / fast:.0f}x")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sample", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is unavailable (or disabled via ROOK_TOURS_NO_NUMBA); nothing to compare")
    bench_batch(args.sample, args.repeat)
    bench_oracle(4, 6, args.repeat)
    bench_oracle(5, 6, args.repeat)


if __name__ == "__main__":
    main()

"""Compare the compiled kernel core against the pure-Python fallback.

Run from the repository root after building the extension:

    python benchmarks/bench_kernels.py
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from stopset import kernels
from stopset import _fallback

try:
    from stopset import _accel
except ImportError:
    _accel = None


def timed(fn, *args, repeat=1):
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return value, best


def bench(name, fn_name, args, repeat=1, check=None):
    py_val, py_t = timed(getattr(_fallback, fn_name), *args, repeat=repeat)
    if _accel is None:
        print(f"{name:<38} python {py_t:8.3f}s   (compiled core not built)")
        return
    c_val, c_t = timed(getattr(_accel, fn_name), *args, repeat=repeat)
    agree = check(py_val, c_val) if check else np.array_equal(py_val, c_val)
    speedup = py_t / c_t if c_t > 0 else float("inf")
    print(f"{name:<38} python {py_t:8.3f}s   compiled {c_t:8.3f}s   "
          f"speedup {speedup:6.1f}x   match={agree}")


def main():
    rng = np.random.default_rng(12345)
    print(f"selected backend: {kernels.BACKEND}\n")

    n = 22
    rows = np.array([int(rng.integers(0, 1 << n)) for _ in range(12)], dtype=np.uint64)
    bench(f"exhaustive_ss_counts (m=12, n={n})", "exhaustive_ss_counts", (rows, n))

    k, ncols = 18, 96
    masks = [int.from_bytes(rng.bytes(12), "little") & ((1 << ncols) - 1) for _ in range(k)]
    packed = kernels.pack_masks(masks, ncols)
    bench(f"codeword_weight_counts (K={k}, n={ncols})", "codeword_weight_counts",
          (packed, ncols))

    L, w = 4, 5
    bench(f"gray_count_dmin_ge2 (L={L}, w={w})", "gray_count_dmin_ge2",
          (L, w, 0, 1 << (L * w)), check=lambda a, b: int(a) == int(b))

    n = 60
    masks = [int.from_bytes(rng.bytes(8), "little") & ((1 << n) - 1) for _ in range(24)]
    packed = kernels.pack_masks(masks, n)
    bench(f"stopping_set_census (m=24, n={n}, w<=4)", "stopping_set_census",
          (packed, n, 4))

    n, m, trials = 100, 75, 4000
    masks = [int.from_bytes(rng.bytes(13), "little") & ((1 << n) - 1) for _ in range(m)]
    packed = kernels.pack_masks(masks, n)
    pats = kernels.pack_masks(
        [int.from_bytes(rng.bytes(13), "little")
         & int.from_bytes(rng.bytes(13), "little")
         & int.from_bytes(rng.bytes(13), "little") & ((1 << n) - 1)
         for _ in range(trials)], n)
    bench(f"peel_residual_batch (m={m}, n={n}, T={trials})", "peel_residual_batch",
          (packed, pats, n))

    n = 16
    masks = np.array([int(rng.integers(0, 1 << n)) for _ in range(8)], dtype=np.uint64)
    bench(f"failure_counts_by_weight (m=8, n={n})", "failure_counts_by_weight",
          (masks, n))


if __name__ == "__main__":
    main()

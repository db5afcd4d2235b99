"""Compare the compiled kernel extension against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py [n]
"""

import sys
import time

import numpy as np

from skyshot.kernels import pure

try:
    from skyshot.kernels import _fast
except ImportError:
    _fast = None


def time_call(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    rng = np.random.default_rng(42)

    samples = np.column_stack(
        [
            rng.uniform(-500, 500, n),
            rng.uniform(-500, 500, n),
            rng.uniform(0, 200, n),
            rng.uniform(0, 360, n),
            rng.uniform(-30, 90, n),
        ]
    )
    grid = np.ascontiguousarray(rng.uniform(0, 80, (64, 64)))
    cell = 25.0
    es = rng.uniform(0, 63 * cell, n)
    ns = rng.uniform(0, 63 * cell, n)
    out = np.empty(n)

    cases = [
        (
            "frustum_visible_count",
            lambda impl: impl.frustum_visible_count(samples, 23.66, 13.3, 35.0, 10.0, -5.0, 3.0),
        ),
        (
            "bilinear_heights_into",
            lambda impl: impl.bilinear_heights_into(grid, cell, es, ns, out),
        ),
    ]

    print(f"n = {n} samples per call, best of 5\n")
    print(f"{'kernel':<24}{'pure':>12}{'compiled':>12}{'speedup':>10}")
    for name, call in cases:
        t_pure = time_call(lambda: call(pure))
        if _fast is not None:
            t_fast = time_call(lambda: call(_fast))
            print(f"{name:<24}{t_pure * 1e3:>10.1f}ms{t_fast * 1e3:>10.2f}ms{t_pure / t_fast:>9.1f}x")
        else:
            print(f"{name:<24}{t_pure * 1e3:>10.1f}ms{'n/a':>12}{'n/a':>10}")
    if _fast is None:
        print("\ncompiled extension not built; only the pure backend was timed")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Timing comparison of the compiled kernels against the pure-Python
fallback.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import random
import time
from fractions import Fraction

from sompow._accel import fallback

try:
    from sompow._accel import _core
except ImportError:
    _core = None


def make_case(seed, k, m):
    rng = random.Random(seed)
    mats = [
        [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(k * k)]
        for _ in range(m)
    ]
    weights = [Fraction(rng.randint(1, 3), rng.randint(1, 2)) for _ in range(m)]
    return (
        [[e.numerator for e in mat] for mat in mats],
        [[e.denominator for e in mat] for mat in mats],
        [w.numerator for w in weights],
        [w.denominator for w in weights],
        k,
    )


def time_one(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    print(f"compiled extension available: {_core is not None}")
    rows = []

    for k, horizon in ((3, 300), (5, 200), (8, 120)):
        args = make_case(7, k, 2)
        pure = time_one(fallback.weighted_scan, *args, horizon, False, True)
        row = [f"weighted_scan k={k} horizon={horizon}", f"{pure * 1e3:8.1f} ms"]
        if _core is not None:
            fast = time_one(_core.weighted_scan, *args, horizon, False, True)
            row.append(f"{fast * 1e3:8.1f} ms")
            row.append(f"{pure / fast:5.1f}x")
        rows.append(row)

    for order, count in ((4, 3000), (8, 1500)):
        rng = random.Random(11)
        cn = [rng.randint(-3, 3) for _ in range(order)]
        cd = [rng.randint(1, 3) for _ in range(order)]
        vn = [rng.randint(-5, 5) for _ in range(order)]
        vd = [rng.randint(1, 3) for _ in range(order)]
        pure = time_one(fallback.lrs_terms, cn, cd, vn, vd, count)
        row = [f"lrs_terms order={order} count={count}", f"{pure * 1e3:8.1f} ms"]
        if _core is not None:
            fast = time_one(_core.lrs_terms, cn, cd, vn, vd, count)
            row.append(f"{fast * 1e3:8.1f} ms")
            row.append(f"{pure / fast:5.1f}x")
        rows.append(row)

    header = ["case", "pure"] + (["compiled", "speedup"] if _core else [])
    width = max(len(r[0]) for r in rows) + 2
    print("".join(h.ljust(width if i == 0 else 14) for i, h in enumerate(header)))
    for row in rows:
        print("".join(c.ljust(width if i == 0 else 14) for i, c in enumerate(row)))


if __name__ == "__main__":
    main()

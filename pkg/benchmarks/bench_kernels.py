"""Compare the compiled and numpy kernel backends.

Usage: python benchmarks/bench_kernels.py [--points N] [--repeat R]
"""

import argparse
import statistics
import time

import numpy as np

from mosaics import _kernels
from mosaics.random_mosaics import PoissonSample, periodic_delaunay


def timeit(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    T = 20 * a.points
    base = rng.integers(0, a.points, (T, 4)).astype(np.int64)
    shift = rng.integers(-1, 2, (T, 4, 3)).astype(np.int64)
    centers = rng.random((20000, 3))
    r2 = rng.random(20000) * 1e-3
    pts = rng.random((2000, 3))
    sample = PoissonSample.draw(a.points, 1)

    backends = _kernels.available_backends()
    print(f"default backend: {_kernels.BACKEND}; available: {', '.join(backends)}")
    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name in backends))
    rows = {
        f"canonical_simplices ({T})": lambda m: m.canonical_simplices(base, shift),
        "insphere_count (20000x2000)": lambda m: m.insphere_count(centers, r2, pts, 1e-9),
    }
    for label, fn in rows.items():
        cols = [timeit(lambda m=m: fn(m), a.repeat) for m in backends.values()]
        print(f"{label:<28}" + "".join(f"{t:>11.3f}s" for t in cols))

    cols = []
    for m in backends.values():
        _kernels.canonical_simplices = m.canonical_simplices
        cols.append(timeit(lambda: periodic_delaunay(sample), a.repeat))
    print(f"{f'periodic_delaunay ({len(sample)})':<28}" + "".join(f"{t:>11.3f}s" for t in cols))


if __name__ == "__main__":
    main()

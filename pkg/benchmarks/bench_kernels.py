"""Benchmark the compiled kernels against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py
"""
from __future__ import annotations

import math
import time

from stcensus import _kernels_py

try:
    from stcensus import _kernels
except ImportError:
    _kernels = None


def timed(fn, *args, repeat: int = 3) -> float:
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_pair_scan(n: int):
    rows = []
    py = timed(_kernels_py.pair_type_census, n, repeat=1)
    rows.append(("python", py))
    if _kernels is not None:
        cc = timed(_kernels.pair_type_census, n)
        rows.append(("compiled", cc))
    return rows


def bench_sweep(l_cutoff: float):
    from stcensus import perms
    from stcensus.origami import Origami

    o = Origami(perms.from_cycles(6, [(0, 1, 2, 3, 4)]), perms.from_cycles(6, [(4, 5)]))
    n = o.n_squares
    radius2 = int(l_cutoff * l_cutoff * n)
    dirs = []
    qmax = math.isqrt(radius2)
    for q in range(0, qmax + 1):
        pmax = math.isqrt(radius2 - q * q)
        for p in range(-pmax, pmax + 1):
            if (q > 0 or (q == 0 and p == 1)) and math.gcd(abs(p), abs(q)) == 1:
                dirs.append((p, q))
    rows = [("python", timed(_kernels_py.direction_spectra, o.h, o.v, dirs, repeat=1))]
    if _kernels is not None:
        rows.append(("compiled", timed(_kernels.direction_spectra, o.h, o.v, dirs)))
    return rows, len(dirs)


def report(title: str, rows) -> None:
    print(f"\n{title}")
    base = rows[0][1]
    for name, t in rows:
        speedup = base / t if t else float("inf")
        print(f"  {name:<9} {t * 1000:10.1f} ms   x{speedup:.1f}")


def main() -> None:
    print(f"backends available: python{' + compiled' if _kernels else ' only'}")
    n = 7
    report(f"pair scan: all (class rep h, v) of S_{n}", bench_pair_scan(n))
    rows, ndirs = bench_sweep(25.0)
    report(f"direction sweep: 6-square origami, {ndirs} directions", rows)


if __name__ == "__main__":
    main()

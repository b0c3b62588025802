#!/usr/bin/env python3
"""Benchmark the box-enumeration kernels: compiled vs pure Python.

Runs the same batch of seeded random instances through both backends,
checks that they return identical solution sets, and reports wall-clock
times and the speedup ratio.

Usage:
    python3 benchmarks/bench_enum.py [--radius R] [--dims M..] [--seed S]
"""

import argparse
import random
import time

from qsr import enumeration


def make_instance(rng, m, bound):
    G = [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i):
            G[i][j] = G[j][i]
    t = rng.randint(-2 * bound, 2 * bound)
    return G, t


def run_backend(instances, radius, backend):
    total = 0.0
    results = []
    for G, t in instances:
        radii = [radius] * len(G)
        t0 = time.perf_counter()
        sols, examined = enumeration.solve_box(G, t, radii, force_backend=backend)
        total += time.perf_counter() - t0
        results.append((tuple(sorted(sols)), examined))
    return total, results


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius", type=int, default=14)
    ap.add_argument("--dims", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--count", type=int, default=8, help="instances per dimension")
    ap.add_argument("--bound", type=int, default=6, help="gram entry bound")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    if not enumeration.HAVE_COMPILED:
        print("compiled kernel not available; nothing to compare")
        return 1

    rng = random.Random(args.seed)
    instances = [
        make_instance(rng, m, args.bound)
        for m in args.dims
        for _ in range(args.count)
    ]
    print(f"{len(instances)} instances, dims {args.dims}, radius {args.radius}, "
          f"threads {enumeration.thread_count()}")

    t_py, r_py = run_backend(instances, args.radius, "python")
    t_cy, r_cy = run_backend(instances, args.radius, "cython")

    if r_py != r_cy:
        print("MISMATCH: backends disagree")
        return 1

    examined = sum(ex for _, ex in r_py)
    print(f"python : {t_py:8.3f} s   ({examined} candidates examined)")
    print(f"cython : {t_cy:8.3f} s")
    print(f"speedup: {t_py / t_cy:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

#!/usr/bin/env python3
"""Benchmark the compiled reduction kernel against the pure-Python one.

Builds the boundary matrix of a Rips filtration over a seeded noisy
circle, runs both kernels on identical input, checks that the pivot rows
agree, and prints wall-clock times with the speedup.

Usage: python benchmarks/bench_reduction.py [--points 60] [--max-dim 2]
       [--repeats 3] [--seed 0]
"""

import argparse
import math
import time

import numpy as np

from dowker import build_rips, from_point_cloud, greedy_order
from dowker import _reduction_py
from dowker.datasets import noisy_circle

try:
    from dowker import _reduction_cy
except ImportError:
    _reduction_cy = None


def boundary_csc(cx):
    entries = [(v, val) for v, val in cx.entries if math.isfinite(val)]
    ordered = sorted(entries, key=lambda e: (e[1], len(e[0]), e[0]))
    index = {verts: i for i, (verts, _) in enumerate(ordered)}
    flat = []
    indptr = [0]
    for verts, _ in ordered:
        if len(verts) > 1:
            flat.extend(sorted(index[verts[:i] + verts[i + 1:]]
                               for i in range(len(verts))))
        indptr.append(len(flat))
    return (np.asarray(indptr, dtype=np.int64),
            np.asarray(flat, dtype=np.int64))


def time_kernel(kernel, indptr, indices, repeats):
    best = math.inf
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = kernel.reduce_low(indptr, indices)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(
        description="reduction kernel shoot-out")
    parser.add_argument("--points", type=int, default=60)
    parser.add_argument("--max-dim", type=int, default=2)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    cloud = noisy_circle(args.points, seed=args.seed)
    d = from_point_cloud(cloud)
    cx = build_rips(d, max_dim=args.max_dim)
    indptr, indices = boundary_csc(cx)
    columns = len(indptr) - 1
    print(f"{args.points} points, max dim {args.max_dim}: "
          f"{columns} columns, {len(indices)} stored rows")

    py_time, py_low = time_kernel(_reduction_py, indptr, indices,
                                  args.repeats)
    print(f"python kernel: {py_time * 1000.0:8.1f} ms")

    if _reduction_cy is None:
        print("compiled kernel unavailable; skipping comparison")
        return

    cy_time, cy_low = time_kernel(_reduction_cy, indptr, indices,
                                  args.repeats)
    print(f"cython kernel: {cy_time * 1000.0:8.1f} ms")

    if not np.array_equal(py_low, cy_low):
        raise SystemExit("kernel outputs differ")
    print(f"outputs identical; speedup x{py_time / cy_time:.1f}")


if __name__ == "__main__":
    main()

"""Benchmark the two lattice-sweep kernels against each other.

The sweep kernel counts, per support bitmask, the lattice characters of a
box; it dominates the runtime of the cohomology oracle.  This script runs
identical workloads through the compiled extension and the numpy fallback
and reports wall times and the speedup, after checking the outputs agree.

Usage:
    python benchmarks/bench_kernel.py [--repeats N]
"""

import argparse
import time

import numpy as np

from excol import BundleSpec, CenterSpec, make_blowup
from excol._sweep_np import count_support_masks as numpy_kernel
from excol.cohomology import _arrangement_box

try:
    from excol._sweep_cy import count_support_masks as cython_kernel
except ImportError:
    cython_kernel = None


def workloads():
    """(label, lo, hi, rays, coeffs) tuples drawn from real oracle calls."""
    cases = [
        ("P1xP1 blowup, O(6,6,-3)", BundleSpec(1, (0, 0)), {"b1", "f1"}, (6, 6, -3)),
        ("dim-3 codim-3, O(4,-5,2)", BundleSpec(2, (0, 0)), {"b1", "b2", "f1"}, (4, -5, 2)),
        ("dim-4 twisted, O(-6,6,1)", BundleSpec(2, (0, 1, 2)), {"b1", "f1"}, (-6, 6, 1)),
        ("dim-4 twisted, O(8,-8,-2)", BundleSpec(2, (0, 1, 2)), {"b1", "f1"}, (8, -8, -2)),
    ]
    for label, spec, names, coords in cases:
        fan = make_blowup(spec, CenterSpec(frozenset(names))).fan_xt
        coeffs = fan.tdivisor_lift(fan.pic_class(coords))
        lo, hi = _arrangement_box(fan.rays, coeffs, fan.dim)
        yield (
            label,
            np.array(lo, dtype=np.int64),
            np.array(hi, dtype=np.int64),
            np.array(fan.rays, dtype=np.int64),
            np.array(coeffs, dtype=np.int64),
        )


def timeit(fn, args, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if cython_kernel is None:
        print("compiled kernel unavailable; benchmarking numpy fallback only")
    header = f"{'workload':<28}{'points':>10}{'numpy':>10}{'cython':>10}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, lo, hi, rays, coeffs in workloads():
        points = int(np.prod(hi - lo + 1))
        t_np, out_np = timeit(numpy_kernel, (lo, hi, rays, coeffs), args.repeats)
        if cython_kernel is None:
            print(f"{label:<28}{points:>10}{t_np:>9.4f}s{'-':>10}{'-':>9}")
            continue
        t_cy, out_cy = timeit(cython_kernel, (lo, hi, rays, coeffs), args.repeats)
        assert np.array_equal(out_np[0], out_cy[0]), label
        assert np.array_equal(out_np[1], out_cy[1]), label
        print(
            f"{label:<28}{points:>10}{t_np:>9.4f}s{t_cy:>9.4f}s{t_np / t_cy:>8.1f}x"
        )


if __name__ == "__main__":
    main()

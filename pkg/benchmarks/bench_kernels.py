#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure numpy fallback.

Times the two hot loops: the n-collision two-qubit oracle and the
fixed-step RK4 propagation of the Bloch 4-vector.

  python3 benchmarks/bench_kernels.py --collisions 20000 --steps 200000
"""
import argparse
import math
import time

import numpy as np

from qcollide import CollisionSpec, QubitState, build_unitary, generator_analytic, homogenization_rates
from qcollide import _kernels_py

try:
    from qcollide import _speedups
except ImportError:
    _speedups = None


def _time(fn, repeats=3):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--collisions", type=int, default=20000)
    parser.add_argument("--steps", type=int, default=200000)
    args = parser.parse_args()

    spec = CollisionSpec("swap", 0.6, 1.0, QubitState(np.array([0.1, 0.0, 0.4])))
    u = build_unitary(spec).u
    r0 = np.array([0.5, 0.0, 0.0])
    g = generator_analytic(homogenization_rates(spec)).m
    v0 = np.array([0.5, 0.5, 0.0, 0.0])

    backends = [("python", _kernels_py)]
    if _speedups is not None:
        backends.append(("compiled", _speedups))
    else:
        print("compiled extension not available; timing the fallback only")

    print(f"{'kernel':<24}{'backend':<10}{'total':>10}  per-op")
    rows = {}
    for name, impl in backends:
        total = _time(lambda: impl.collision_trajectory(u, r0, spec.reservoir.r, args.collisions))
        rows[("collision", name)] = total
        print(f"{'collision_trajectory':<24}{name:<10}{total:>9.3f}s  {total / args.collisions * 1e6:.2f} us")
    for name, impl in backends:
        total = _time(lambda: impl.rk4_propagate(g, v0, 1e-4, args.steps))
        rows[("rk4", name)] = total
        print(f"{'rk4_propagate':<24}{name:<10}{total:>9.3f}s  {total / args.steps * 1e6:.2f} us")

    if _speedups is not None:
        for kernel in ("collision", "rk4"):
            speedup = rows[(kernel, "python")] / rows[(kernel, "compiled")]
            print(f"{kernel}: compiled is {speedup:.1f}x faster")

        # agreement spot check
        s_py, _ = _kernels_py.collision_trajectory(u, r0, spec.reservoir.r, 1000)
        s_c, _ = _speedups.collision_trajectory(u, r0, spec.reservoir.r, 1000)
        print(f"backend agreement (1000 collisions): {np.abs(s_py - s_c).max():.3e}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Benchmark the compiled RK4 kernel against the pure-Python fallback.

Runs each available backend on a preset's stepping loop (kernel only, no
trajectory assembly), reports wall time, steps/s and the speedup, and
cross-checks that the backends agree on the final state.

    python benchmarks/benchmark_kernels.py
    python benchmarks/benchmark_kernels.py --preset trigonometric --dt 1e-4
"""

import argparse
import sys
import time

import numpy as np

from susy_qubit import Frame, preset, rotate_to_a
from susy_qubit.kernels import FRAME_A, FRAME_C, available_backends


def bench(mod, scenario, dt: float, repeats: int):
    initial = scenario.initial_state()
    n = int(round((scenario.t_max - scenario.t_min) / dt))
    frame = FRAME_A if scenario.frame is Frame.A else FRAME_C
    out1 = np.empty(n + 1, dtype=np.complex128)
    out2 = np.empty(n + 1, dtype=np.complex128)
    p = scenario.params
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        status, n_valid = mod.run_rk4(
            p.k, p.theta, p.phi, frame,
            complex(initial.amp1), complex(initial.amp2),
            scenario.t_min, dt, n, 1e12, out1, out2,
        )
        best = min(best, time.perf_counter() - start)
    if status != 0 or n_valid != n:
        raise RuntimeError(f"{mod.BACKEND_NAME}: aborted with status {status} at step {n_valid}")
    return best, n, out1[-1], out2[-1]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--preset", default="hyperbolic",
                        choices=("decaying", "hyperbolic", "trigonometric"))
    parser.add_argument("--dt", type=float, default=1e-3)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)

    scenario = preset(args.preset)
    backends = available_backends()
    print(f"preset={args.preset} window=[{scenario.t_min:g}, {scenario.t_max:g}] "
          f"dt={args.dt:g} repeats={args.repeats}")
    print(f"{'backend':>8s} {'steps':>9s} {'best time':>11s} {'steps/s':>12s}")

    results = {}
    for name in sorted(backends):
        elapsed, n, last1, last2 = bench(backends[name], scenario, args.dt, args.repeats)
        results[name] = (elapsed, last1, last2)
        print(f"{name:>8s} {n:9d} {elapsed:10.4f}s {n / elapsed:12.3e}")

    if len(results) == 2:
        speedup = results["python"][0] / results["cython"][0]
        dev = max(
            abs(results["python"][1] - results["cython"][1]),
            abs(results["python"][2] - results["cython"][2]),
        )
        print(f"speedup (python/cython): {speedup:.1f}x")
        print(f"final-state cross-check |delta|: {dev:.3e}")
        if dev > 1e-9:
            print("backends disagree beyond 1e-9", file=sys.stderr)
            return 1
    else:
        print("compiled kernel not built; benchmarked the fallback only")
    return 0


if __name__ == "__main__":
    sys.exit(main())

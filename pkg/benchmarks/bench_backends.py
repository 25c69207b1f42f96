"""Throughput comparison of the two series-kernel implementations.

Runs the same moment and phase-space workloads through the compiled and the
pure-numpy kernels and prints wall-clock times.  The first compiled call
pays the JIT cost, so one warmup pass runs before timing.

Usage: python3 benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import math
import time

import numpy as np

from dfstates import _series_numpy

try:
    from dfstates import _series_numba
except ImportError:
    _series_numba = None

CTRL = (1e-12, 2000, 5)

MOMENT_CASES = [
    # subtract, n, ops, q, r, amag, theta
    (False, 1, 1, 1, 1, 0.5, 0.0),
    (False, 2, 2, 3, 3, 1.0, 0.7),
    (False, 3, 2, 5, 5, 2.0, 1.1),
    (True, 1, 1, 2, 2, 0.8, 0.0),
    (True, 2, 1, 4, 3, 1.5, 2.0),
    (True, 3, 2, 5, 5, 2.5, 0.9),
]


def run_moments(mod, repeat):
    t0 = time.perf_counter()
    sink = 0.0
    for _ in range(repeat):
        for case in MOMENT_CASES:
            value, _, ok = mod.moment_sum(*case, *CTRL)
            assert ok
            sink += abs(value)
    return time.perf_counter() - t0, sink


def run_grid(mod, repeat, points):
    re = np.linspace(-3.0, 3.0, points)
    im = np.linspace(-3.0, 3.0, points)
    nterms = mod_terms(2.0, math.hypot(3.0, 3.0), 2, 1)
    t0 = time.perf_counter()
    sink = 0.0
    for _ in range(repeat):
        amps = mod.husimi_grid(False, 2, 1, 2.0, 0.4, re, im, nterms)
        sink += float(np.abs(amps).sum())
    return time.perf_counter() - t0, sink


def mod_terms(amag, bmag, n, ops):
    return _series_numpy.husimi_terms(amag, bmag, n, ops)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=200,
                        help="moment-workload repetitions (default 200)")
    parser.add_argument("--grid-points", type=int, default=121,
                        help="points per grid axis (default 121)")
    parser.add_argument("--grid-repeat", type=int, default=5,
                        help="grid-workload repetitions (default 5)")
    args = parser.parse_args()

    mods = [("numpy", _series_numpy)]
    if _series_numba is not None:
        run_moments(_series_numba, 1)          # JIT warmup
        run_grid(_series_numba, 1, args.grid_points)
        mods.append(("numba", _series_numba))
    else:
        print("numba unavailable; timing the numpy kernels only")

    results = {}
    for name, mod in mods:
        tm, sink_m = run_moments(mod, args.repeat)
        tg, sink_g = run_grid(mod, args.grid_repeat, args.grid_points)
        results[name] = (tm, tg)
        checks = results.setdefault("_sinks", [])
        checks.append((sink_m, sink_g))

    sinks = results.pop("_sinks")
    if len(sinks) == 2:
        assert abs(sinks[0][0] - sinks[1][0]) < 1e-6 * abs(sinks[0][0])
        assert abs(sinks[0][1] - sinks[1][1]) < 1e-6 * abs(sinks[0][1])

    n_moments = args.repeat * len(MOMENT_CASES)
    n_grid = args.grid_repeat * args.grid_points ** 2
    print(f"moment workload: {n_moments} series evaluations")
    print(f"grid workload:   {n_grid} phase-space points")
    for name, (tm, tg) in results.items():
        print(f"  {name:6s} moments {tm:8.3f} s ({n_moments / tm:10.0f}/s)   "
              f"grid {tg:7.3f} s ({n_grid / tg:10.0f} pts/s)")
    if "numba" in results and "numpy" in results:
        su_m = results["numpy"][0] / results["numba"][0]
        su_g = results["numpy"][1] / results["numba"][1]
        print(f"  speedup (numpy time / numba time): "
              f"moments {su_m:.3g}x, grid {su_g:.3g}x")


if __name__ == "__main__":
    main()

"""Compare the compiled extension kernels against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/benchmark_backends.py

Times three hot paths: single-point Airy evaluation across the full branch
structure, one adaptive auxiliary-equation solve per mode of a production
grid, and the compensated reduction used for the energy sums.  Results are
wall-clock medians over repeats; the script needs no arguments and prints
one table.
"""

import math
import statistics
import time

import numpy as np

from tll._backend import load_backend

REPEATS = 5


def _med(fn):
    samples = []
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def bench_airy(kernels):
    z = np.linspace(-40.0, 90.0, 20000)

    def run():
        for zi in z:
            kernels.airy_kernel(zi)

    return _med(run)


def bench_solve(kernels):
    # linear ramp, one representative slow mode, production tolerances
    times = np.linspace(0.0, 10.0, 201)
    p = 2.0 * math.pi * 10.0 / 100.0

    def run():
        for _ in range(200):
            kernels.solve_schedule(
                1, 0.5, 10.0, 0.0, 1.0, p, p, 1.0, 0.0, times, 1e-10, 1e-13
            )

    return _med(run)


def bench_sum(kernels):
    rng = np.random.default_rng(3)
    values = list(rng.normal(scale=1e8, size=200000) + 1.0)

    def run():
        kernels.compensated_sum(values)

    return _med(run)


def main():
    backends = {}
    for name in ("pure", "compiled"):
        try:
            backends[name] = load_backend(name)
        except Exception as exc:  # compiled module absent on source installs
            print("backend %r unavailable: %s" % (name, exc))
    rows = []
    for label, fn in (
        ("airy eval x20k", bench_airy),
        ("ramp solve x200", bench_solve),
        ("compensated sum 200k", bench_sum),
    ):
        timings = {name: fn(mod) for name, mod in backends.items()}
        rows.append((label, timings))

    width = max(len(r[0]) for r in rows)
    names = list(backends)
    header = "%-*s" % (width, "kernel")
    for n in names:
        header += "  %12s" % n
    if len(names) == 2:
        header += "  %8s" % "speedup"
    print(header)
    print("-" * len(header))
    for label, timings in rows:
        line = "%-*s" % (width, label)
        for n in names:
            line += "  %10.1f ms" % (1e3 * timings[n])
        if len(names) == 2:
            line += "  %7.1fx" % (timings[names[0]] / timings[names[1]])
        print(line)


if __name__ == "__main__":
    main()

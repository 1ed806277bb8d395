#!/usr/bin/env python3
"""Benchmark the Numba kernels against the vectorized NumPy fallbacks.

Both backends consume the same counter-based random streams, so besides the
timing table the script reports how far the two sets of terminal radii drift
apart (last-place rounding of the libm calls only).

Usage:
    python benchmarks/bench_backends.py [--paths 20000] [--steps 2000] [--workers 2]
"""
import argparse
import os
import time

import numpy as np

from hyperbm.geometry import origin
from hyperbm.sampling import (
    SimulationPlan,
    active_backend,
    first_passage,
    set_worker_count,
    simulate_halfspace,
    simulate_radial,
)

DISABLE_ENV = "HYPERBM_DISABLE_NUMBA"


def run_case(name, fn, plan, *args, **kwargs):
    rows = {}
    for backend in ("numba", "numpy"):
        if backend == "numpy":
            os.environ[DISABLE_ENV] = "1"
        else:
            os.environ.pop(DISABLE_ENV, None)
        assert active_backend() == backend
        fn(plan, *args, **kwargs)  # warm (JIT compile / first-touch)
        started = time.perf_counter()
        result = fn(plan, *args, **kwargs)
        rows[backend] = (time.perf_counter() - started, result.terminal_radii)
    os.environ.pop(DISABLE_ENV, None)
    t_nb, r_nb = rows["numba"]
    t_np, r_np = rows["numpy"]
    drift = float(np.max(np.abs(r_nb - r_np)))
    print(f"{name:<16} numba {t_nb:8.3f}s   numpy {t_np:8.3f}s   "
          f"speedup {t_np / t_nb:6.1f}x   max |delta radius| {drift:.2e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--paths", type=int, default=20000)
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--workers", type=int, default=2)
    args = ap.parse_args()

    set_worker_count(args.workers)
    dt = 1e-3
    horizon = args.steps * dt
    print(f"paths={args.paths} steps={args.steps} dt={dt} workers={args.workers}")

    radial_plan = SimulationPlan(n=3, horizon=horizon, dt=dt, paths=args.paths,
                                 master_seed=1, start_radius=1.0)
    run_case("radial", simulate_radial, radial_plan)

    ambient_plan = SimulationPlan(n=3, horizon=horizon, dt=dt, paths=args.paths,
                                  master_seed=1, start=origin(3))
    run_case("halfspace", simulate_halfspace, ambient_plan)

    fp_plan = SimulationPlan(n=3, horizon=horizon, dt=dt, paths=args.paths,
                             master_seed=1, start_radius=2.0)
    run_case("first_passage", first_passage, fp_plan, 1.0, stop_level=12.0)


if __name__ == "__main__":
    main()

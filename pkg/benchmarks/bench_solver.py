"""Wall-clock comparison of the numba and numpy/scipy solver backends.

    python benchmarks/bench_solver.py [--tau-end 1.0] [--N 400]
"""
import argparse
import time

import numpy as np

from stefanss import InitialData, SolverConfig, run
from stefanss._kernels import BACKENDS

H = 0.6420127083438707


def time_backend(name, init, cfg, tau_end, repeat):
    run(init, cfg, 10 * cfg.dtau, backend=name)  # JIT warm-up
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        traj = run(init, cfg, tau_end, backend=name)
        best = min(best, time.perf_counter() - start)
    return best, traj


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--tau-end", type=float, default=1.0)
    parser.add_argument("--N", type=int, default=400)
    parser.add_argument("--dtau", type=float, default=1e-4)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    init = InitialData.ramp(0.5, 1.0)
    cfg = SolverConfig(H, N=args.N, dtau=args.dtau)
    nsteps = round(args.tau_end / args.dtau)
    print(f"ramp data, N={args.N}, dtau={args.dtau:g}, {nsteps} steps")

    results = {}
    for name in sorted(BACKENDS):
        elapsed, traj = time_backend(name, init, cfg, args.tau_end, args.repeat)
        results[name] = traj
        print(f"{name:>6}: {elapsed:8.3f} s  ({1e6 * elapsed / nsteps:7.2f} us/step)  b(end)={traj.b[-1]:.15f}")

    if len(results) == 2:
        a, b = results["numba"], results["numpy"]
        print(f"max |numba - numpy|: values {np.max(np.abs(a.values - b.values)):.2e}, "
              f"front {np.max(np.abs(a.b - b.b)):.2e}")


if __name__ == "__main__":
    main()

"""Time the numba kernel against the numpy fallback on paper-scale runs.

    python benchmarks/bench_backends.py [--steps 1600] [--repeat 3]
"""
import argparse
import time

import numpy as np

from parrondo_walk import (
    evolve,
    init_basis,
    init_single_default,
    init_two_coin_theta,
    preset,
    required_radius,
    schedule_alternating_multicoin,
    schedule_periodic_q,
)
from parrondo_walk import _kernels

CASES = {
    "single q=4": ("single", init_single_default, schedule_periodic_q(4)),
    "two_wait XYXY": ("two_wait", lambda r: init_two_coin_theta(np.pi / 4, r),
                      schedule_alternating_multicoin(2, "AB", "BA")),
    "one_wait XYXY": ("one_wait", lambda r: init_basis(2, "00", r), schedule_alternating_multicoin(2, "AB", "BA")),
    "three_coin alt": ("three_coin", lambda r: init_basis(3, "010", r),
                       schedule_alternating_multicoin(3, "ABA", "BAB")),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--steps", type=int, default=1600)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAS_NUMBA else [])
    print(f"{'case':16s}" + "".join(f"{b:>12s}" for b in backends) + f"{'max |diff|':>14s}")
    for name, (shift, make, sched) in CASES.items():
        rule = preset(shift)
        state = make(required_radius(rule, args.steps))
        results, times = {}, {}
        for b in backends:
            evolve(state, sched, rule, 4, backend=b)  # jit warm-up
            times[b] = best_of(lambda: evolve(state, sched, rule, args.steps, backend=b), args.repeat)
            results[b] = evolve(state, sched, rule, args.steps, backend=b)[1].data
        diff = np.max(np.abs(results[backends[0]] - results[backends[-1]]))
        print(f"{name:16s}" + "".join(f"{times[b] * 1e3:10.1f}ms" for b in backends) + f"{diff:14.1e}")


if __name__ == "__main__":
    main()

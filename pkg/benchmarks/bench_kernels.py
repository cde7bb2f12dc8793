#!/usr/bin/env python3
"""Benchmark the compiled kernel lane against the pure-Python lane.

Runs the hot inner loops on representative workloads (products at witness
and wreath degrees, full closure of S_7, conjugacy sweeps, the abortive
closures the refutation sampler leans on) and prints a timing table.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time
from random import Random

from permwit import _kernels_py as py_lane

try:
    from permwit import _kernels_c as c_lane
except ImportError:
    c_lane = None


def random_tables(rng, degree, count):
    out = []
    for _ in range(count):
        values = list(range(degree))
        rng.shuffle(values)
        out.append(bytes(values))
    return out


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def workloads():
    rng = Random(2024)
    deg15 = random_tables(rng, 15, 200)
    deg35 = random_tables(rng, 35, 200)
    s7_gens = [bytes([1, 2, 3, 4, 5, 6, 0]), bytes([1, 0, 2, 3, 4, 5, 6])]
    a5_gens = [bytes([1, 2, 0, 3, 4]), bytes([0, 1, 3, 4, 2])]
    wreath15 = random_tables(rng, 15, 3)

    def compose_many(lane):
        def run():
            f = lane.compose
            for a in deg15:
                for b in deg15:
                    f(a, b)
        return run

    def compose_deg35(lane):
        def run():
            f = lane.compose
            for a in deg35:
                for b in deg35:
                    f(a, b)
        return run

    def invert_many(lane):
        def run():
            f = lane.inverse
            for _ in range(100):
                for a in deg35:
                    f(a)
        return run

    def close_s7(lane):
        def run():
            for _ in range(5):
                lane.close_elements(7, s7_gens, 5040)
        return run

    def close_abort(lane):
        # the refutation sampler's common case: give up at the budget
        def run():
            for _ in range(20):
                assert lane.close_elements(15, wreath15, 10000) is None
        return run

    def conj_sweep(lane):
        invs = [py_lane.inverse(g) for g in a5_gens]

        def run():
            for x in random_tables(Random(5), 5, 60):
                lane.conjugacy_orbit(x, a5_gens, invs)
        return run

    return [
        ("compose 40k (degree 15)", compose_many),
        ("compose 40k (degree 35)", compose_deg35),
        ("inverse 20k (degree 35)", invert_many),
        ("close S_7 x5 (5040 elements)", close_s7),
        ("abortive closure x20 (budget 10k)", close_abort),
        ("conjugacy orbits in A_5", conj_sweep),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repeats, best is kept (default 3)")
    args = parser.parse_args()

    lanes = [("py", py_lane)]
    if c_lane is not None:
        lanes.append(("c", c_lane))
    else:
        print("compiled lane not built; showing pure-Python numbers only\n")

    name_width = max(len(name) for name, _ in workloads())
    header = f"{'workload':<{name_width}}  " + "".join(
        f"{label + ' [ms]':>12}" for label, _ in lanes)
    if c_lane is not None:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, make in workloads():
        times = [bench(make(lane), args.repeat) for _, lane in lanes]
        row = f"{name:<{name_width}}  " + "".join(
            f"{t * 1000:>12.2f}" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()

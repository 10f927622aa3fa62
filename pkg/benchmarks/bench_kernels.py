"""Compare the compiled and pure-Python kernels on the pendulum problem.

    python benchmarks/bench_kernels.py [--nodes 32 64 128] [--repeat 3] [--threads 0]

Times one alpha=0 level (all boundary-node pairs) and a full 21-level run
for each backend, and checks that both backends return the same times.
"""

import argparse
import time

import numpy as np

from fuzzytoc import kernels
from fuzzytoc.fuzzy_core import FuzzyState, TriangularFuzzyNumber, state_alpha_cut
from fuzzytoc.fuzzy_time import FuzzyProblem, fuzzy_optimal_time, node_set

START = FuzzyState(TriangularFuzzyNumber(-6, -5, -4), TriangularFuzzyNumber(2, 3, 4))
TARGET = FuzzyState(TriangularFuzzyNumber(-0.5, 0, 0.5), TriangularFuzzyNumber(-0.5, 0, 0.5))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, nargs="+", default=[32, 64, 128])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=0)
    args = ap.parse_args()

    backends = sorted(kernels.BACKENDS)
    print(f"backends available: {', '.join(backends)}")
    print(f"{'nodes/edge':>10} {'pairs':>9} " + " ".join(f"{b + ' level':>14}" for b in backends)
          + " " + " ".join(f"{b + ' full':>13}" for b in backends) + "  max |diff|")
    for n in args.nodes:
        problem = FuzzyProblem(START, TARGET, nodes_per_edge=n)
        P = node_set(state_alpha_cut(START, 0.0), problem)
        Q = node_set(state_alpha_cut(TARGET, 0.0), problem)
        level, full, mats = {}, {}, {}
        for b in backends:
            level[b], mats[b] = best_of(
                lambda: kernels.pair_times(P, Q, num_threads=args.threads, backend=b), args.repeat)
            full[b], _ = best_of(
                lambda: fuzzy_optimal_time(problem, threads=args.threads, backend=b), 1)
        diff = max(float(np.max(np.abs(mats[b] - mats[backends[0]]))) for b in backends)
        print(f"{n:>10} {len(P) * len(Q):>9} "
              + " ".join(f"{level[b]:>13.3f}s" for b in backends) + " "
              + " ".join(f"{full[b]:>12.2f}s" for b in backends) + f"  {diff:.1e}")
    if len(backends) == 2:
        print(f"speedup (compiled / fallback, largest level): {level['python'] / level['cython']:.1f}x")


if __name__ == "__main__":
    main()

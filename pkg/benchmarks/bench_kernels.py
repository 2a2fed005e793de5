"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Prints one row per workload with the best-of-N time for each backend and
the speedup.  Workloads are sized so the Python backend finishes in a few
seconds.
"""

import argparse
import time

import numpy as np

from randcomplex import _backend
from randcomplex.cochain import random_cochain
from randcomplex.complex import sample_complex
from randcomplex.groups import build_group
from randcomplex.search import _problem


def workloads():
    C2, C3, A5 = build_group("C2"), build_group("C3"), build_group("A5")
    rng = np.random.default_rng(0)

    M_c3 = [random_cochain(C3, 7, rng).dense() for _ in range(5)]
    yield "orbit weight, exhaustive (C3, n=7, x5)", lambda k: [
        k.orbit_weight_exhaustive(M, C3.mul_table, C3.inv_table) for M in M_c3]

    M_a5 = [random_cochain(A5, 6, rng).dense() for _ in range(5)]
    yield "orbit weight, branch and bound (A5, n=6, x5)", lambda k: [
        k.orbit_weight_bnb(M, A5.mul_table, A5.inv_table, 20_000) for M in M_a5]

    yield "expansion scan (C2, n=5)", lambda k: k.expansion_scan(5, C2.mul_table, C2.inv_table)

    probs = [_problem(sample_complex(9, 0.25, s)) for s in range(5)]
    yield "cocycle enumeration (C3, n=9, p=0.25, x5)", lambda k: [
        k.search_cocycles(p.nvars, p.forced, p.rels, p.order, C3.mul_table, C3.inv_table,
                          10**5, False, 10**7) for p in probs]


def best_of(fn, kernels, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(kernels)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _backend.available()
    names = sorted(backends)
    print(f"{'workload':48s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in workloads():
        times = {n: best_of(fn, backends[n], args.repeat) for n in names}
        row = f"{label:48s}" + "".join(f"{times[n]:11.4f}s" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row, flush=True)


if __name__ == "__main__":
    main()

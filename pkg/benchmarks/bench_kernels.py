"""Time the numba and numpy kernels against each other.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time
from itertools import combinations

import numpy as np

from bicoeff._backend import HAVE_NUMBA
from bicoeff.graph import complete_graph
from bicoeff.kernels import connected_subsets, jacobi_eigenvalues, subset_scan
from bicoeff.poly import graph_matrix


def _edges(g):
    eu = np.array([u for u, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v in g.edges], dtype=np.int64)
    return eu, ev


def _time(fn, repeat: int) -> float:
    fn()  # warm-up (JIT compilation)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])

    k6 = complete_graph(6)
    k7_edges = list(combinations(range(7), 2))
    k7u = np.array([e[0] for e in k7_edges], dtype=np.int64)
    k7v = np.array([e[1] for e in k7_edges], dtype=np.int64)
    mat = np.array(graph_matrix(complete_graph(12)), dtype=np.float64) + np.diag(np.arange(12.0))
    cases = {
        "subset_scan K6 (15 edges)": lambda b: subset_scan(6, *_edges(k6), backend=b),
        "connected_subsets n=7 m=8": lambda b: connected_subsets(7, k7u, k7v, 8, backend=b),
        "jacobi 12x12": lambda b: jacobi_eigenvalues(mat, 1e-12, 100, backend=b),
    }
    print(f"{'kernel':32s}" + "".join(f"{b:>12s}" for b in backends))
    for name, fn in cases.items():
        times = [_time(lambda b=b: fn(b), args.repeat) for b in backends]
        print(f"{name:32s}" + "".join(f"{t * 1000:10.2f}ms" for t in times))


if __name__ == "__main__":
    main()

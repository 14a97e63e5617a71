"""Time the numba kernels against their pure-Python fallbacks.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Both variants are called directly, so one process covers both paths. The
first numba call (compilation, or a cache load) is reported separately.
An end-to-end comparison of a verification suite under each setting of
``WIDTH2LAB_NUMBA`` follows with ``--suite NAME``.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from width2lab import kernels
from width2lab.families import double_fork, half_graph, path_graph


def _time(func, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - t)
    return best


def cases():
    G = double_fork(10)
    H = double_fork(7)
    big = path_graph(40)
    allowed = np.ones((H.n, G.n), dtype=np.bool_)
    S = H.relation_code()
    T = G.relation_code()
    rows = half_graph(6).module_rows()
    pair = big.relation_code().astype(np.int64)
    colours = np.zeros(big.n, dtype=np.int64)
    return [
        ("embedding DF7 -> DF10", kernels._find_embedding_nb, kernels._find_embedding_py,
         (S, T, allowed)),
        ("bfs distances P40", kernels._bfs_distances_nb, kernels._bfs_distances_py,
         (big.masks,)),
        ("induced paths DF10", kernels._induced_paths_nb, kernels._induced_paths_py,
         (G.masks,)),
        ("module scan H6", kernels._module_scan_nb, kernels._module_scan_py,
         (rows, rows.shape[1])),
        ("refinement P40", kernels._refine_nb, kernels._refine_py, (pair, colours)),
    ]


def suite_times(name):
    out = {}
    for flag in ("1", "0"):
        env = dict(os.environ, WIDTH2LAB_NUMBA=flag)
        t = time.perf_counter()
        subprocess.run([sys.executable, "-m", "width2lab.cli", "verify", "--suite", name],
                       env=env, check=True, capture_output=True)
        out[flag] = time.perf_counter() - t
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--suite", help="also time one verification suite end to end")
    args = ap.parse_args()

    print(f"{'kernel':24s} {'first nb':>10s} {'numba':>10s} {'python':>10s} {'speedup':>8s}")
    for label, nb, py, call in cases():
        first = _time(nb, call, 1)
        t_nb = _time(nb, call, args.repeat)
        t_py = _time(py, call, max(1, args.repeat // 2))
        print(f"{label:24s} {first:10.4f} {t_nb:10.5f} {t_py:10.5f} {t_py / t_nb:8.1f}x")

    if args.suite:
        t = suite_times(args.suite)
        print(f"\nsuite {args.suite}: numba {t['1']:.2f}s, fallback {t['0']:.2f}s")


if __name__ == "__main__":
    main()

"""Timing comparison of the compiled kernels against the pure-Python
reference implementations.

Run from the repo root:

    python benchmarks/bench_kernels.py [--table-n 22] [--repeat 3]

Both backends see identical inputs and their outputs are asserted equal;
when the compiled extension is unavailable the script says so and exits.
"""

import argparse
import time

import numpy as np

from halllab import _kernels
from halllab.generators import gnp
from halllab.rng import Seed


def _best_of(repeat, fn, *args):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def _row(name, pure_s, fast_s):
    speedup = pure_s / fast_s if fast_s > 0 else float("inf")
    print(f"{name:<22} pure {pure_s * 1e3:10.2f} ms   "
          f"compiled {fast_s * 1e3:10.2f} ms   x{speedup:.1f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--table-n", type=int, default=22)
    ap.add_argument("--mwis-n", type=int, default=45)
    ap.add_argument("--cut-n", type=int, default=3000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = _kernels.backends()
    if "compiled" not in backends:
        print("compiled extension not built; nothing to compare")
        return
    fast, pure = backends["compiled"], backends["pure"]

    g = gnp(args.table_n, "1/2", Seed(2024))
    adj = g.adjacency_masks()
    closed = [m | (1 << v) for v, m in enumerate(adj)]
    p_s, p_tab = _best_of(args.repeat, pure.alpha_table_fill, g.n, closed)
    f_s, f_tab = _best_of(args.repeat, fast.alpha_table_fill, g.n, closed)
    assert np.array_equal(p_tab, f_tab)
    _row(f"alpha_table n={args.table_n}", p_s, f_s)

    p_s, p_out = _best_of(args.repeat, pure.hall_ratio_scan, p_tab, g.n)
    f_s, f_out = _best_of(args.repeat, fast.hall_ratio_scan, f_tab, g.n)
    assert p_out == tuple(f_out)
    _row(f"hall_scan n={args.table_n}", p_s, f_s)

    g = gnp(args.mwis_n, "1/2", Seed(7))
    adj = g.adjacency_masks()
    w = list(range(1, g.n + 1))
    p_s, p_out = _best_of(args.repeat, pure.mwis_solve, g.n, adj, w, 10 ** 9)
    f_s, f_out = _best_of(args.repeat, fast.mwis_solve, g.n, adj, w, 10 ** 9)
    assert tuple(p_out) == tuple(f_out)
    _row(f"mwis n={args.mwis_n}", p_s, f_s)

    g = gnp(args.cut_n, "1/100", Seed(11))
    side0 = pure.greedy_bipartition(g.indptr, g.indices)
    p_side, f_side = side0.copy(), side0.copy()
    p_s, p_out = _best_of(1, pure.maxcut_refine, g.indptr, g.indices, p_side)
    f_s, f_out = _best_of(1, fast.maxcut_refine, g.indptr, g.indices, f_side)
    assert p_out == f_out and np.array_equal(p_side, f_side)
    _row(f"maxcut n={args.cut_n}", p_s, f_s)

    t = max(1, int(np.diff(g.indptr).mean()) // 2)
    p_s, p_out = _best_of(args.repeat, pure.core_peel, g.indptr, g.indices, t)
    f_s, f_out = _best_of(args.repeat, fast.core_peel, g.indptr, g.indices, t)
    assert np.array_equal(p_out, f_out)
    _row(f"core_peel n={args.cut_n}", p_s, f_s)


if __name__ == "__main__":
    main()

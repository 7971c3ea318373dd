"""Compare the compiled kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Each row times one kernel on one lattice, plus an end-to-end row that builds
a cold lattice and runs every axiom suite on a uniform q-matroid.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qmatroids import _pykernels, kernels, space
from qmatroids import constructions as cons
from qmatroids.qmatroid import run_suites

CASES = [(2, 4), (3, 3), (2, 5), (5, 2)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_rows(q, n, repeat):
    L = space.Lattice(q, n, cap=None)
    tables = space._array_tables(q)
    keys = np.asarray(L._sorted_keys, dtype=np.int64)
    join, meet = _pykernels.join_meet(L._bases, L.dims, q, n, *tables, keys, L._order)
    rank = np.minimum(L.dims, n // 2).astype(np.int64)
    idxs = np.arange(len(L), dtype=np.int64)
    T = np.eye(n, dtype=np.int64)[::-1].copy()
    jobs = {
        "join_meet": lambda m: m.join_meet(L._bases, L.dims, q, n, *tables, keys, L._order),
        "submodular_scan": lambda m: m.submodular_scan(rank, join, meet),
        "map_subspaces": lambda m: m.map_subspaces(L._bases, L.dims, idxs, T, q, n, *tables,
                                                   keys, L._order),
    }
    for name, job in jobs.items():
        out = {b: best_of(lambda: job(kernels.get(b)), repeat) for b in kernels.available()}
        yield f"{name} GF({q})^{n} [{len(L)}]", out


def suite_row(k, n, q, repeat):
    out = {}
    for b in kernels.available():
        kernels.set_backend(b)

        def job():
            space._LATTICES.clear()
            run_suites(cons.uniform(k, n, q))

        out[b] = best_of(job, repeat)
    kernels.set_backend("auto")
    space._LATTICES.clear()
    return f"all suites U({k},{n},{q}) cold", out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = kernels.available()
    print(f"{'case':40s}" + "".join(f"{b:>12s}" for b in names) + ("  speedup" if len(names) > 1 else ""))
    rows = []
    for q, n in CASES:
        rows.extend(kernel_rows(q, n, args.repeat))
    rows.append(suite_row(2, 4, 2, args.repeat))
    rows.append(suite_row(1, 3, 3, args.repeat))
    for label, out in rows:
        line = f"{label:40s}" + "".join(f"{out[b] * 1e3:10.2f}ms" for b in names)
        if "cython" in out:
            line += f"  {out['python'] / out['cython']:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()

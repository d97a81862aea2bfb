"""Time the matrix pipeline with the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py --dims 8 10 --repeat 3
"""

import argparse
import time

from newbasis import kernels
from newbasis.matrices import (
    FourierMatrix,
    d_matrix,
    n_matrix,
    product_is_identity,
    r_matrix,
)
from newbasis.phi import enumerate_phi


def best_of(repeat, fn):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(dim, repeat):
    fam = enumerate_phi(dim)
    d = d_matrix(fam)
    rows = {}
    for name in kernels.available_backends():
        old = kernels.set_backend(name)
        try:
            r = r_matrix(fam, d)
            n = n_matrix(fam, r)
            rows[name] = {
                "r": best_of(repeat, lambda: r_matrix(fam, d)),
                "n": best_of(repeat, lambda: n_matrix(fam, r)),
                "d r = I": best_of(repeat, lambda: product_is_identity(d, r)),
                "n^2 = I": best_of(repeat, lambda: product_is_identity(n, n, 1 << dim)),
                "F^2 = I": best_of(repeat, lambda: FourierMatrix(dim).square_is_identity()),
            }
        finally:
            kernels.set_backend(old)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[8, 10])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "cython" not in kernels.available_backends():
        print("compiled kernels not built; timing the Python fallback only")
    for dim in args.dims:
        rows = bench(dim, args.repeat)
        steps = list(next(iter(rows.values())))
        print(f"\nD={dim}  (best of {args.repeat}, seconds)")
        print(f"{'step':<10}" + "".join(f"{b:>10}" for b in rows) + ("   speedup" if len(rows) == 2 else ""))
        for step in steps:
            line = f"{step:<10}" + "".join(f"{rows[b][step]:>10.3f}" for b in rows)
            if len(rows) == 2:
                line += f"{rows['python'][step] / rows['cython'][step]:>9.1f}x"
            print(line)


if __name__ == "__main__":
    main()

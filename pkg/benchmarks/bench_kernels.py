"""Compare the numba and pure-numpy kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Times full commutation scans (commuting inputs, so no early exit) and
tabulation, then a whole theorem verification run, once per path.
"""

import argparse
import time

import numpy as np

from latpoly import _accel, _kernels, chain, product
from latpoly.polynomial import DnfPolynomial


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def scan_case(lat, n):
    # meet of all variables: self-commuting, so the whole space is scanned
    coeffs = np.full(1 << n, lat.bottom)
    coeffs[-1] = lat.top
    p = DnfPolynomial(lat, n, coeffs)
    vals = p.table
    total = lat.size ** (n * n)
    return f"scan {lat.describe()} n={n} ({total} matrices)", lambda use: _kernels.first_failure(
        vals, n, vals, n, lat.size, 0, total, use_numba=use
    )


def tab_case(lat, n, seed=0):
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, lat.size, 1 << n)
    return f"tabulate {lat.describe()} n={n} ({lat.size ** n} points)", lambda use: _kernels.tabulate(
        coeffs, n, lat.size, lat.meet_table, lat.join_table, lat.bottom, use_numba=use
    )


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    cases = [
        scan_case(chain(2), 4),
        scan_case(chain(3), 3),
        scan_case(product([2, 2]), 3),
        tab_case(chain(4), 6),
        tab_case(product([2, 3]), 5),
    ]
    print(f"{'case':48s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, fn in cases:
        fn(True)  # compile outside the timing
        t_nb, r_nb = best_of(lambda: fn(True), args.repeat)
        t_np, r_np = best_of(lambda: fn(False), args.repeat)
        same = np.array_equal(np.asarray(r_nb), np.asarray(r_np))
        print(f"{name:48s} {t_nb * 1e3:8.2f}ms {t_np * 1e3:8.2f}ms {t_np / t_nb:7.1f}x"
              + ("" if same else "  RESULTS DIFFER"))


if __name__ == "__main__":
    main()

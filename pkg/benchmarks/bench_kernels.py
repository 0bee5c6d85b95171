#!/usr/bin/env python3
"""
Benchmark jitted kernels against their pure-numpy twins.

Each hot kernel ships in two implementations that compute the same
quantities: a numba-jitted loop version and a vectorized numpy version.
This script times both on the same inputs and reports the speedup, so a
regression in either twin is visible.

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 100 400 1000 2000
    python benchmarks/bench_kernels.py --output results.json
"""

import argparse
import json
import time
from datetime import datetime

import numpy as np

from tau_spectra.basis import jacobi, recurrence_arrays
from tau_spectra._kernels import (
    HAVE_NUMBA,
    USE_NUMBA,
    _clenshaw_grid_nb,
    _clenshaw_grid_np,
    _derivative_table_nb,
    _derivative_table_np,
    _integral_table_nb,
    _integral_table_np,
    _lu_factor_nb,
    _lu_factor_np,
    _lu_substitute_nb,
    _lu_substitute_np,
    warmup,
)

BASIS = jacobi(0.0, 0.0)


def warmup_jit():
    """Trigger JIT compilation for every active kernel."""
    if not HAVE_NUMBA:
        return
    print("Warming up JIT compilation...")
    warmup()
    # the benchmark calls the jitted twins directly, so touch those too
    alpha, beta, gamma = recurrence_arrays(BASIS, 8)
    eta = _derivative_table_nb(alpha, beta, gamma, 7)
    _integral_table_nb(alpha, eta, 6)
    a = np.eye(4) * 4.0 + 1.0
    piv = np.zeros(4, dtype=np.int64)
    _lu_factor_nb(a, piv)
    _lu_substitute_nb(a, piv, np.ones(4))
    _clenshaw_grid_nb(alpha, beta, gamma, np.ones(3), np.linspace(-1, 1, 5))
    print("JIT warmup complete.\n")


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run_pair(name, make_args, nb_fn, np_fn, sizes, repeats):
    print(f"\n{name}")
    print(f"{'size':>8} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}")
    print("-" * 44)
    rows = []
    for s in sizes:
        args_nb = make_args(s)
        args_np = make_args(s)
        nb_ms = (
            best_of(lambda: nb_fn(*args_nb()), repeats) * 1e3
            if HAVE_NUMBA
            else float("inf")
        )
        np_ms = best_of(lambda: np_fn(*args_np()), repeats) * 1e3
        speedup = np_ms / nb_ms if nb_ms > 0 else 0.0
        print(f"{s:>8} {nb_ms:>12.3f} {np_ms:>12.3f} {speedup:>8.1f}x")
        rows.append(
            {"size": s, "numba_ms": nb_ms, "numpy_ms": np_ms, "speedup": speedup}
        )
    return rows


def bench_derivative_table(sizes, repeats):
    def make_args(s):
        alpha, beta, gamma = recurrence_arrays(BASIS, s + 1)
        return lambda: (alpha, beta, gamma, s)

    return run_pair(
        "derivative table (column recurrence)",
        make_args,
        _derivative_table_nb,
        _derivative_table_np,
        sizes,
        repeats,
    )


def bench_integral_table(sizes, repeats):
    def make_args(s):
        alpha, beta, gamma = recurrence_arrays(BASIS, s + 2)
        eta_ext = _derivative_table_np(alpha, beta, gamma, s + 1)
        return lambda: (alpha, eta_ext, s)

    return run_pair(
        "integral table (back substitution over the derivative table)",
        make_args,
        _integral_table_nb,
        _integral_table_np,
        sizes,
        repeats,
    )


def bench_lu_factor(sizes, repeats):
    rng = np.random.default_rng(7)

    def make_args(s):
        a = rng.standard_normal((s, s)) + s * np.eye(s)
        # the kernel factors in place, so hand out fresh copies
        return lambda: (a.copy(), np.zeros(s, dtype=np.int64))

    return run_pair(
        "LU factorization (partial pivoting, in place)",
        make_args,
        _lu_factor_nb,
        _lu_factor_np,
        sizes,
        repeats,
    )


def bench_lu_substitute(sizes, repeats):
    rng = np.random.default_rng(8)

    def make_args(s):
        a = rng.standard_normal((s, s)) + s * np.eye(s)
        piv = np.zeros(s, dtype=np.int64)
        _lu_factor_np(a, piv)
        b = rng.standard_normal(s)
        return lambda: (a, piv, b)

    return run_pair(
        "LU substitution (forward + back solve)",
        make_args,
        _lu_substitute_nb,
        _lu_substitute_np,
        sizes,
        repeats,
    )


def bench_clenshaw(sizes, repeats, grid_points=2001):
    rng = np.random.default_rng(9)
    xs = np.linspace(-1.0, 1.0, grid_points)

    def make_args(s):
        alpha, beta, gamma = recurrence_arrays(BASIS, s + 2)
        coeffs = rng.standard_normal(s + 1)
        return lambda: (alpha, beta, gamma, coeffs, xs)

    return run_pair(
        f"series evaluation ({grid_points}-point grid)",
        make_args,
        _clenshaw_grid_nb,
        _clenshaw_grid_np,
        sizes,
        repeats,
    )


def main():
    parser = argparse.ArgumentParser(description="Benchmark kernel twins")
    parser.add_argument(
        "--sizes",
        type=int,
        nargs="+",
        default=[100, 400, 1000, 2000],
        help="matrix/table sizes to benchmark",
    )
    parser.add_argument(
        "--repeats", type=int, default=3, help="repetitions per timing (best kept)"
    )
    parser.add_argument("--output", type=str, default=None, help="JSON results file")
    args = parser.parse_args()

    print("=" * 60)
    print("KERNEL TWIN BENCHMARKS")
    print("=" * 60)
    print(f"Date: {datetime.now().isoformat()}")
    print(f"Numba available: {HAVE_NUMBA} (active path: {'numba' if USE_NUMBA else 'numpy'})")
    print(f"Sizes: {args.sizes}")

    if not HAVE_NUMBA:
        print("\nWARNING: numba not installed; only the numpy twins will run.")

    warmup_jit()

    results = {
        "metadata": {
            "date": datetime.now().isoformat(),
            "numba_available": HAVE_NUMBA,
            "sizes": args.sizes,
            "repeats": args.repeats,
        },
        "derivative_table": bench_derivative_table(args.sizes, args.repeats),
        "integral_table": bench_integral_table(args.sizes, args.repeats),
        "lu_factor": bench_lu_factor(args.sizes, args.repeats),
        "lu_substitute": bench_lu_substitute(args.sizes, args.repeats),
        "clenshaw": bench_clenshaw(args.sizes, args.repeats),
    }

    if HAVE_NUMBA:
        print(f"\n{'=' * 60}")
        print("SUMMARY (largest size)")
        print(f"{'=' * 60}")
        for name in ("derivative_table", "integral_table", "lu_factor", "lu_substitute", "clenshaw"):
            last = results[name][-1]
            print(f"{name:>18}: {last['speedup']:.1f}x at size {last['size']}")

    if args.output:
        with open(args.output, "w") as fh:
            json.dump(results, fh, indent=2)
        print(f"\nResults saved to {args.output}")


if __name__ == "__main__":
    main()

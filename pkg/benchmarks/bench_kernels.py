#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Times the three hot kernels in isolation and one end-to-end exhaustive
search with each backend patched in.  Run from the repository root:

    PYTHONPATH=src python3 benchmarks/bench_kernels.py [--controls M] [--reps N]
"""

import argparse
import time

import numpy as np

from qmuxopt import cost, kernels, randmux, search


def _time(fn, reps):
    best = float("inf")
    for _ in range(reps):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_gate_stage(m, reps):
    gen = randmux.generate(m, randmux.POOL_FULL, seed=1)
    gates = gen.targets.copy()
    rows = []
    for name, fn in _impls(kernels.gate_stage_numba, kernels.gate_stage_numpy):
        fn(gates, kernels.FORWARD_POS, 0)  # warm-up / JIT compile
        rows.append((name, _time(lambda: fn(gates, kernels.FORWARD_POS, m // 2), reps)))
    return rows


def bench_mux_cost(m, reps):
    gen = randmux.generate(m, randmux.POOL_FULL, seed=2)
    gates = gen.targets.copy()
    counts = cost.control_count_vector("1" * m)
    table = cost.cost_table_vector(m)
    rows = []
    for name, fn in _impls(kernels.mux_cost_numba, kernels.mux_cost_numpy):
        fn(gates, counts, table, 1e-9)
        rows.append((name, _time(lambda: fn(gates, counts, table, 1e-9), reps)))
    return rows


def bench_gf2_stage(n, reps):
    rng = np.random.default_rng(3)
    vec = rng.integers(0, 2, size=1 << n).astype(np.uint8)
    rows = []
    for name, fn in _impls(kernels.gf2_stage_numba, kernels.gf2_stage_numpy):
        fn(vec, kernels.GF2_POS, 0)
        rows.append((name, _time(lambda: fn(vec, kernels.GF2_POS, n // 2), reps)))
    return rows


def bench_search(m, reps):
    gen = randmux.generate(m, randmux.POOL_FULL, seed=4)
    cfg = search.SearchConfig(family="fpqf")
    rows = []
    pairs = [("numba", kernels.gate_stage_numba, kernels.mux_cost_numba),
             ("numpy", kernels.gate_stage_numpy, kernels.mux_cost_numpy)]
    saved = (kernels.gate_stage, kernels.mux_cost)
    try:
        for name, stage_fn, cost_fn in pairs:
            if stage_fn is None:
                continue
            kernels.gate_stage = stage_fn
            kernels.mux_cost = lambda g, c, t, e, _f=cost_fn: tuple(
                int(v) for v in _f(g, c, t, e)
            )
            search.exhaustive_search(gen, cfg)  # warm-up
            rows.append((name, _time(lambda: search.exhaustive_search(gen, cfg), reps)))
    finally:
        kernels.gate_stage, kernels.mux_cost = saved
    return rows


def _impls(numba_fn, numpy_fn):
    out = []
    if numba_fn is not None:
        out.append(("numba", numba_fn))
    out.append(("numpy", numpy_fn))
    return out


def _print(title, rows):
    print(f"\n{title}")
    base = dict(rows).get("numpy")
    for name, seconds in rows:
        speedup = f"  ({base / seconds:.1f}x vs numpy)" if name == "numba" and base else ""
        print(f"  {name:<6} {seconds * 1e3:10.3f} ms{speedup}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--controls", type=int, default=12)
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()

    print(f"numba available: {kernels.HAVE_NUMBA}   dispatch: "
          f"{'numba' if kernels.USE_NUMBA else 'numpy'}")
    m = args.controls
    _print(f"gate butterfly column (2^{m} gates)", bench_gate_stage(m, args.reps))
    _print(f"polarity cost sum (2^{m} gates)", bench_mux_cost(m, args.reps))
    _print(f"GF(2) butterfly column (2^{max(m, 16)} bits)",
           bench_gf2_stage(max(m, 16), args.reps))
    small = min(m, 10)
    _print(f"exhaustive fixed-polarity search (m={small})", bench_search(small, max(2, args.reps // 2)))


if __name__ == "__main__":
    main()

"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]

Each kernel is run once before timing so JIT compilation is excluded, and
the two backends are checked to return identical arrays.
"""
import argparse
import time

import numpy as np

from mrlc.constructions import construct_optimized
from mrlc.kernels import _numba, _numpy
from mrlc.topology import puncture_batch
from mrlc.verification import _difference_batch, effective_columns


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(scale):
    rng = np.random.default_rng(0)
    n = int(200_000 * scale)
    f16 = (16, 0x2B)
    a = rng.integers(0, 1 << 16, size=n, dtype=np.uint64)
    b = rng.integers(0, 1 << 16, size=n, dtype=np.uint64)
    yield "gf_mul GF(2^16)", lambda m: m.gf_mul(a, b, *f16)

    code = construct_optimized(60, 4, 4)
    t = code.topology
    grid = np.array(code.alphas, dtype=np.uint64).reshape(t.ell, t.r + 1)
    E = puncture_batch(t, 0, int(20_000 * scale))
    vals = _difference_batch(grid, E, t.r)
    yield f"gf2_independent (60,4,4) x{len(E)}", lambda m: m.gf2_independent(vals, t.h)

    E = puncture_batch(t, 0, max(1, int(4 * scale)))
    cols, _ = effective_columns(np.array(code.global_rows(), dtype=np.uint64)[None], t, E)
    combos = _numpy.combination_table(t.k + t.h, t.h)[: int(50_000 * scale)]
    yield f"first_singular (60,4,4) {len(E)}x{len(combos)} minors", \
        lambda m: m.first_singular(cols[0], combos, code.field.degree, code.field.low)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--scale", type=float, default=1.0)
    args = p.parse_args()
    print(f"{'kernel':48s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, fn in cases(args.scale):
        assert np.array_equal(fn(_numpy), fn(_numba)), name
        tn = best_of(lambda: fn(_numpy), args.repeat)
        tj = best_of(lambda: fn(_numba), args.repeat)
        print(f"{name:48s} {tn:10.4f} {tj:10.4f} {tn / tj:7.1f}x")


if __name__ == "__main__":
    main()

"""Compare the compiled kernels with the numpy/Python fallback.

    python3 benchmarks/bench_kernels.py [--reps N] [--sizes 16,32,64]

Both backends are called directly on the same random matrices, and their
outputs are checked for equality before timing."""

import argparse
import random
import time

import numpy as np

from clgroups import _kernels_py as py
from clgroups import kernels
from clgroups.ff import make_field

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 4), (3, 2), (5, 2)]


def best(fn, reps):
    t = float("inf")
    for _ in range(reps):
        s = time.perf_counter()
        fn()
        t = min(t, time.perf_counter() - s)
    return t


def rand_matrix(F, n, rng):
    return np.array([[F.random(rng) for _ in range(n)] for _ in range(n)], dtype=F.dtype)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--sizes", default="16,32,64")
    args = ap.parse_args(argv)
    if kernels._ext is None:
        raise SystemExit("compiled extension not available; build with pip install -e . --no-build-isolation")
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = random.Random(0)
    print(f"{'field':>8} {'n':>4} {'op':>7} {'cython ms':>10} {'python ms':>10} {'speedup':>8}")
    for p, k in FIELDS:
        F = make_field(p, k).F
        for n in sizes:
            A, B = rand_matrix(F, n, rng), rand_matrix(F, n, rng)
            ops = {
                "matmul": (lambda: kernels.matmul(F, A, B), lambda: py.matmul(F, A, B)),
                "rref": (lambda: kernels.rref(F, A)[0], lambda: py.rref(F, A)[0]),
                "det": (lambda: kernels.det(F, A), lambda: py.det(F, A)),
            }
            for name, (fc, fp) in ops.items():
                assert np.array_equal(np.asarray(fc()), np.asarray(fp())), (name, p, k, n)
                tc, tp = best(fc, args.reps), best(fp, args.reps)
                print(f"{F.order:>8} {n:>4} {name:>7} {tc * 1e3:>10.3f} {tp * 1e3:>10.3f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()

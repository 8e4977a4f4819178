"""Compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeats 3] [--quick]

For each kernel and size, prints the best wall time of each backend, the
speed-up, and whether the two outputs agree bit for bit.
"""

import argparse
import sys
import time

import numpy as np

from jplse import _fallback

try:
    from jplse import _kernels
except ImportError:
    _kernels = None

TIE = 1e-12


def best_of(fn, repeats):
    best, out = float("inf"), None
    for _ in range(repeats):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases(quick):
    fixed = [512, 2048] if quick else [512, 2048, 8192]
    allk = [128, 512] if quick else [128, 512, 1024]
    partial = [512, 2048] if quick else [512, 2048, 4096]
    for n in fixed:
        yield "potts_fixed", n, lambda m, s1, s2: m.potts_fixed(s1, s2, 0.01 * s1.size, TIE)
    for n in allk:
        yield "potts_all_k (K=n-1)", n, lambda m, s1, s2: m.potts_all_k(s1, s2, s1.size - 2, TIE)
    for n in partial:
        yield "max_partial_exact", n, lambda m, s1, s2: m.max_partial_exact(s1)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller sizes")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<22}{'n':>7}{'cython s':>12}{'numpy s':>12}{'speed-up':>10}  identical")
    for name, n, call in cases(args.quick):
        y = rng.standard_normal(n)
        s1 = np.concatenate([[0.0], np.cumsum(y)])
        s2 = np.concatenate([[0.0], np.cumsum(y * y)])
        tc, oc = best_of(lambda: call(_kernels, s1, s2), args.repeats)
        tp, op = best_of(lambda: call(_fallback, s1, s2), args.repeats)
        print(f"{name:<22}{n:>7}{tc:>12.4f}{tp:>12.4f}{tp / tc:>10.1f}  {same(oc, op)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Time the compiled and pure-Python column reduction kernels.

    python3 benchmarks/bench_reduce.py [--points 40] [--max-dim 2] [--field 2] [--repeat 3]

Both kernels reduce the same anti-transposed coboundary matrix of a random
Vietoris-Rips filtration; their outputs are compared before timing.
"""

import argparse
import sys
import time

import numpy as np

from pcup import _reduce_py
from pcup.complex import build_vr


def coboundary_columns(c, p):
    n = len(c)
    cols = []
    for r in range(n):
        entries = sorted((n - 1 - j, s % p) for j, s in c.cofacets(n - 1 - r))
        cols.append(([e[0] for e in entries], [e[1] for e in entries]))
    return cols


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=40)
    ap.add_argument("--max-dim", type=int, default=2)
    ap.add_argument("--field", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    try:
        from pcup import _reduce
    except ImportError:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    rng = np.random.default_rng(args.seed)
    pts = rng.normal(size=(args.points, 3))
    c = build_vr(max_dim=args.max_dim, points=pts)
    cols = coboundary_columns(c, args.field)
    print(f"{len(c)} simplices, {sum(len(i) for i, _ in cols)} nonzeros, field {args.field}")

    if _reduce.reduce_columns(cols, args.field, True) != _reduce_py.reduce_columns(cols, args.field, True):
        print("kernels disagree", file=sys.stderr)
        return 2

    for track in (False, True):
        t_py = best_of(lambda: _reduce_py.reduce_columns(cols, args.field, track), args.repeat)
        t_cy = best_of(lambda: _reduce.reduce_columns(cols, args.field, track), args.repeat)
        print(f"track={track!s:5}  python {t_py:8.4f} s   cython {t_cy:8.4f} s   speedup {t_py / t_cy:5.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

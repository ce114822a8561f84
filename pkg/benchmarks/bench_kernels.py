"""Time the compiled and pure-Python ``power_norms`` loops on the same inputs.

    python benchmarks/bench_kernels.py [--dims 4 10 32] [--steps 2000] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from projprod import _kernels_py
from projprod.suites import random_pair

try:
    from projprod import _kernels as _ext
except ImportError:
    _ext = None


def workload(dim, seed=0):
    pair = random_pair(np.random.default_rng(seed), dim)
    return pair.p1 @ pair.p2, np.zeros((dim, dim), dtype=np.complex128)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[4, 10, 32])
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if _ext is None:
        print("compiled extension not built; only the Python backend is timed")
    print(f"{'dim':>5} {'python ms':>12} {'cython ms':>12} {'speedup':>9} {'max diff':>10}")
    for dim in args.dims:
        a, limit = workload(dim)
        # tol_stop = -1 forces exactly `steps` iterations on both sides
        call_py = lambda: _kernels_py.power_norms(a, limit, -1.0, args.steps)  # noqa: E731
        t_py = min(timeit.repeat(call_py, number=1, repeat=args.repeat)) * 1e3
        if _ext is None:
            print(f"{dim:>5} {t_py:>12.1f} {'-':>12} {'-':>9} {'-':>10}")
            continue
        call_c = lambda: _ext.power_norms(a, limit, -1.0, args.steps)  # noqa: E731
        t_c = min(timeit.repeat(call_c, number=1, repeat=args.repeat)) * 1e3
        diff = np.max(np.abs(np.asarray(call_py()) - np.asarray(call_c())))
        print(f"{dim:>5} {t_py:>12.1f} {t_c:>12.1f} {t_py / t_c:>8.1f}x {diff:>10.1e}")


if __name__ == "__main__":
    main()

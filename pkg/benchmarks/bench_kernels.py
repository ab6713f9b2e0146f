"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from hgreg._kernels import _pure

try:
    from hgreg._kernels import _core
except ImportError:
    _core = None

P_CURVE = 7919
P_SURFACE = 499


def cases(mod):
    chi_c = _pure.legendre_table(P_CURVE)
    chi_s = _pure.legendre_table(P_SURFACE)
    dense = np.ones(20001, dtype=np.int64)
    exps = [k * (3 * k - 1) // 2 for k in range(-80, 81)]
    vals = [(-1) ** (k % 2) for k in range(-80, 81)]
    return {
        "legendre_table p=7919": lambda: mod.legendre_table(P_CURVE),
        "poly_char_sum quartic p=7919": lambda: mod.poly_char_sum([1, 0, 5, 0, 7], P_CURVE, chi_c),
        "surface_count p=499": lambda: mod.surface_count(2, P_SURFACE, chi_s),
        "sparse_convolve n=20000": lambda: mod.sparse_convolve(dense, exps, vals, 20000),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    pure = cases(_pure)
    core = cases(_core) if _core is not None else {}
    print(f"{'kernel':32s} {'pure [ms]':>10s} {'cython [ms]':>12s} {'speed-up':>9s}")
    for name, fn in pure.items():
        t_pure = min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3
        if name in core:
            t_core = min(timeit.repeat(core[name], number=1, repeat=args.repeat)) * 1e3
            print(f"{name:32s} {t_pure:10.3f} {t_core:12.3f} {t_pure / t_core:8.1f}x")
        else:
            print(f"{name:32s} {t_pure:10.3f} {'n/a':>12s}")


if __name__ == "__main__":
    main()

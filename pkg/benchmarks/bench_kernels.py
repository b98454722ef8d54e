"""Compiled vs numpy kernel timings.

Run with ``python benchmarks/bench_kernels.py [points]``.
"""

import sys
import timeit

import numpy as np

from stmcirc import kernels
from stmcirc.junction import REFERENCE_JUNCTION as P


def cases(n):
    rng = np.random.default_rng(0)
    f = np.linspace(0.85e9, 1.15e9, n)
    k = P.coefficients
    jy = (f, P.l0, P.w0, k.sigma, k.gamma, P.loss_rate, 2 * np.pi * P.fm)
    c = rng.normal(size=(6, n)) + 1j * rng.normal(size=(6, n))
    c *= 0.3
    return {
        "junction_y": jy,
        "cyclic_convert": (c[0], c[1], c[2], 0.02, False),
        "mason": tuple(c),
    }


def main(n=2001, repeat=7):
    if kernels.compiled_backend is None:
        print("compiled extension not built; only the numpy backend is available")
    args = cases(n)
    print(f"{'kernel':<16}{'numpy (us)':>12}{'cython (us)':>13}{'speedup':>9}")
    for name, a in args.items():
        py = getattr(kernels.python_backend, name)
        t_py = min(timeit.repeat(lambda: py(*a), number=20, repeat=repeat)) / 20
        if kernels.compiled_backend is not None:
            cy = getattr(kernels.compiled_backend, name)
            t_cy = min(timeit.repeat(lambda: cy(*a), number=20, repeat=repeat)) / 20
            print(f"{name:<16}{t_py * 1e6:12.1f}{t_cy * 1e6:13.1f}{t_py / t_cy:9.2f}")
        else:
            print(f"{name:<16}{t_py * 1e6:12.1f}{'-':>13}{'-':>9}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2001)

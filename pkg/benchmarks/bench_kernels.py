"""Time the compiled kernels against the numpy fallback.

Run from the repository root after building the extension:

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from qdft import _pykernels

try:
    from qdft import _ckernels
except ImportError:
    _ckernels = None


def cases():
    rng = np.random.default_rng(0)
    x = rng.normal(size=4096) + 0.1j * rng.normal(size=4096)
    coeffs = 1.0 - 0.9 ** np.arange(12, dtype=complex)
    theta = rng.normal(size=4096) + 0.2j
    binom = rng.normal(size=9) + 0j
    small = rng.normal(size=8) + 1j * rng.normal(size=8)
    big = rng.normal(size=256) + 1j * rng.normal(size=256)
    return [
        ("hermite_recurrence n=12, 4096 pts", "hermite_recurrence", (x, coeffs)),
        ("hermite_recurrence n=12, scalar", "hermite_recurrence", (0.3 + 0.1j, coeffs)),
        ("exp_sum n=8, 4096 pts", "exp_sum", (theta, binom)),
        ("exp_sum n=8, 8 pts (lattice row)", "exp_sum", (theta[:8], binom)),
        ("dft_direct N=8", "dft_direct", (small,)),
        ("dft_direct N=256", "dft_direct", (big,)),
    ]


def best_time(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat, loops)) / loops


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the numpy fallback is timed")
    print(f"{'case':<36} {'numpy (us)':>12} {'cython (us)':>12} {'speedup':>8}")
    for label, name, fargs in cases():
        py = best_time(getattr(_pykernels, name), fargs, args.repeat) * 1e6
        if _ckernels is None:
            print(f"{label:<36} {py:12.2f} {'-':>12} {'-':>8}")
            continue
        cy = best_time(getattr(_ckernels, name), fargs, args.repeat) * 1e6
        ref = np.asarray(getattr(_pykernels, name)(*fargs))
        got = np.asarray(getattr(_ckernels, name)(*fargs))
        assert np.allclose(ref, got, rtol=1e-12, atol=1e-12), label
        print(f"{label:<36} {py:12.2f} {cy:12.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()

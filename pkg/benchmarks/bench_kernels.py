"""Time the compiled kernels against their numpy references.

Run with ``python3 benchmarks/bench_kernels.py``.  With MCT_DISABLE_NUMBA=1
both columns run numpy code and the speedup is about 1.
"""

import time

import numpy as np

from mct import _kernels as K


def best_of(fn, repeat=5):
    fn()  # warm up (and compile)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases(rng):
    xs = rng.uniform(-64, 64, 64)
    cf = rng.normal(size=64) + 1j * rng.normal(size=64)
    g = rng.normal(size=1 << 14) + 1j * rng.normal(size=1 << 14)
    lo = np.sort(rng.uniform(-32, 32, 256))
    hi = lo + 0.25
    cr = rng.normal(size=256) + 0j
    centers = np.linspace(-40, 40, 2000)
    ys = rng.uniform(-8, 8, 20000)
    return [
        ("expsum_uniform", lambda f: f(-8.0, 1e-3, 1 << 16, xs, cf)),
        ("expsum_points", lambda f: f(ys, xs, cf)),
        ("osc_sampled", lambda f: f(g, 64, 8, 64, g.size - 64, 2.0)),
        ("modulus_sampled", lambda f: f(g[:4096], 64)),
        ("interval_osc", lambda f: f(lo, hi, cr, centers, 1.5, 2.0)),
    ]


def main():
    rng = np.random.default_rng(0)
    print(f"backend: {K.BACKEND}")
    print(f"{'kernel':<18}{'active (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for name, call in cases(rng):
        fast = getattr(K, name)
        ref = K.NUMPY_KERNELS[name]
        a, b = call(fast), call(ref)
        ok = np.allclose(a if not isinstance(a, tuple) else a[1],
                         b if not isinstance(b, tuple) else b[1], rtol=1e-8, atol=1e-9)
        ta = best_of(lambda: call(fast))
        tb = best_of(lambda: call(ref))
        flag = "" if ok else "  MISMATCH"
        print(f"{name:<18}{ta:>12.4f}{tb:>12.4f}{tb / ta:>10.1f}{flag}")


if __name__ == "__main__":
    main()

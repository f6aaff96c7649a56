"""Benchmark the compiled kernels against the numpy reference backend.

Usage:
    python3 benchmarks/bench_kernels.py [--repeats N]

Times the two hot kernels (CTF synthesis, successive cancellation) at the
full processing scale and at a desk scale, and verifies both backends
agree on the results they produce.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from isacsim.kernels import _pyref

try:
    from isacsim.kernels import _fast
except ImportError:
    _fast = None


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_ctf(repeats):
    rng = np.random.default_rng(1)
    cases = {
        "ctf desk (256x8, 60 paths)": (256, 8, 60),
        "ctf full (2984x8, 60 paths)": (2984, 8, 60),
        "ctf full (2984x8, 480 paths)": (2984, 8, 480),
    }
    for label, (n_sub, n_ant, n_paths) in cases.items():
        alphas = (rng.standard_normal(n_paths)
                  + 1j * rng.standard_normal(n_paths)) * 1e-5
        roundtrips = rng.uniform(1.0, 40.0, n_paths)
        sin_thetas = rng.uniform(-0.99, 0.99, n_paths)
        args = (alphas, roundtrips, sin_thetas, n_sub, n_ant,
                800e6 / n_sub, 0.005765, 26e9)
        t_py, ref = _time(lambda: _pyref.synthesize_ctf(*args), repeats)
        if _fast is None:
            print(f"{label:34s} py {t_py * 1e3:8.2f} ms   (no compiled backend)")
            continue
        t_c, fast = _time(lambda: _fast.synthesize_ctf(*args), repeats)
        err = np.max(np.abs(ref - fast)) / np.abs(ref).max()
        print(
            f"{label:34s} py {t_py * 1e3:8.2f} ms   c {t_c * 1e3:8.2f} ms"
            f"   speedup {t_py / t_c:5.1f}x   rel err {err:.1e}"
        )


def bench_cancellation(repeats):
    rng = np.random.default_rng(2)
    cases = {
        "cancel desk (1024x32, 8 peaks)": (1024, 32, 8),
        "cancel full (16384x32, 8 peaks)": (16384, 32, 8),
        "cancel full (16384x32, 40 peaks)": (16384, 32, 40),
    }
    for label, (nb, kb, n_peaks) in cases.items():
        power = rng.exponential(1.0, size=(nb, kb))
        for _ in range(n_peaks):
            power[rng.integers(nb), rng.integers(kb)] = rng.uniform(1e4, 1e6)
        args = (3.0, 0.0759, 1.0, 5, 3, 200)

        def run(impl, base=power):
            return impl.successive_cancellation(
                np.ascontiguousarray(base.copy()), *args
            )

        t_py, ref = _time(lambda: run(_pyref), repeats)
        if _fast is None:
            print(f"{label:34s} py {t_py * 1e3:8.2f} ms   (no compiled backend)")
            continue
        t_c, fast = _time(lambda: run(_fast), repeats)
        match = "ok" if [tuple(t) for t in ref] == [tuple(t) for t in fast] else "MISMATCH"
        print(
            f"{label:34s} py {t_py * 1e3:8.2f} ms   c {t_c * 1e3:8.2f} ms"
            f"   speedup {t_py / t_c:5.1f}x   peaks {match}"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    from isacsim import kernels

    print(f"active backend: {kernels.backend()}")
    bench_ctf(args.repeats)
    bench_cancellation(args.repeats)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Time the numba kernels against their pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]

The first numba call (compilation or cache load) is timed separately and
excluded from the steady-state numbers.  Each pair is also checked for
agreement so a fast-but-wrong kernel shows up here too.
"""

import argparse
import time

import numpy as np

from hilbert_et import kernels
from hilbert_et._accel import HAVE_NUMBA


def _cases(rng, scale):
    n_roots = int(60 * scale)
    z = np.exp(2j * np.pi * rng.uniform(size=n_roots))
    coeffs = np.poly(z)[::-1].astype(complex)
    z0 = 1.1 * np.exp(2j * np.pi * (np.arange(n_roots) + 0.25) / n_roots)
    angles = np.sort(rng.uniform(size=int(2000 * scale)))
    cand = np.unique(np.concatenate([np.linspace(0, 1, 2001), angles]))
    cnt_le = np.searchsorted(angles, cand, side="right").astype(float)
    cnt_lt = np.searchsorted(angles, cand, side="left").astype(float)
    theta = np.linspace(-0.5, 0.5, int(2049 * scale))
    k = np.arange(1, int(4096 * scale) + 1)
    a, b = 1.0 / k ** 2, np.zeros(k.size)
    return {
        "aberth": (coeffs, z0, 500, 1e-14),
        "log_abs_factored": (theta, np.ones(n_roots), rng.uniform(size=n_roots)),
        "arc_scan": (angles,),
        "arc_oracle": (cand, cnt_le, cnt_lt, float(angles.size)),
        "trig_series": (theta, a, b),
        "rescaling_ksum": (np.linspace(-0.45, 0.45, 19), np.linspace(0.01, 0.49, 48), np.full(48, 0.01), 256),
    }


def _first(out):
    return out[0] if isinstance(out, tuple) else out


def _best(fn, args, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0, help="multiplies the problem sizes")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    cases = _cases(np.random.default_rng(args.seed), args.scale)
    print(f"{'kernel':<18} {'numpy [ms]':>11} {'numba [ms]':>11} {'first [ms]':>11} {'speedup':>8} {'max diff':>10}")
    for name, call_args in cases.items():
        t_np, out_np = _best(kernels.get(name, "numpy"), call_args, args.repeat)
        if not HAVE_NUMBA:
            print(f"{name:<18} {1e3 * t_np:>11.2f} {'-':>11} {'-':>11} {'-':>8} {'-':>10}")
            continue
        nb = kernels.get(name, "numba")
        t0 = time.perf_counter()
        nb(*call_args)
        first = time.perf_counter() - t0
        t_nb, out_nb = _best(nb, call_args, args.repeat)
        a, b = np.atleast_1d(_first(out_np)), np.atleast_1d(_first(out_nb))
        if name == "aberth":  # same roots, possibly in a different order
            a, b = np.sort_complex(a), np.sort_complex(b)
        diff = float(np.max(np.abs(a - b)))
        print(f"{name:<18} {1e3 * t_np:>11.2f} {1e3 * t_nb:>11.2f} {1e3 * first:>11.1f} "
              f"{t_np / t_nb:>7.1f}x {diff:>10.1e}")


if __name__ == "__main__":
    main()

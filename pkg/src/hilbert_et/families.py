"""Seeded polynomial families and random test functions.

Every random draw goes through a ``numpy.random.Generator`` built from the
seed passed in; nothing touches global RNG state.
"""

import numpy as np

from .errors import InvalidArgument
from .hilbert import PiecewiseLinear
from .polynomial import ComplexPolynomial, RootSet, expand_from_roots

KINDS = ("cyclotomic", "power-of-linear", "random-unit", "random-disk", "random-real")


def generate_family(kind, N, seed=0):
    """Monic polynomial of degree N from one of the built-in families.

    cyclotomic       z^N - 1
    power-of-linear  (z - 1)^N
    random-unit      roots uniform on the unit circle
    random-disk      uniform angles, moduli uniform in [1/2, 2]
    random-real      real coefficients: conjugate pairs on the circle plus
                     real roots at +-1 (some real roots for R(P) checks)
    """
    N = int(N)
    if N < 1:
        raise InvalidArgument("N must be at least 1")
    rng = np.random.default_rng(seed)
    if kind == "cyclotomic":
        c = np.zeros(N, dtype=complex)
        c[0] = -1.0
        return ComplexPolynomial(c, RootSet(np.ones(N), np.arange(N) / N))
    if kind == "power-of-linear":
        return expand_from_roots(RootSet(np.ones(N), np.zeros(N)))
    if kind == "random-unit":
        return expand_from_roots(RootSet(np.ones(N), rng.uniform(0.0, 1.0, N)))
    if kind == "random-disk":
        theta = rng.uniform(0.0, 1.0, N)
        rho = rng.uniform(0.5, 2.0, N)
        return expand_from_roots(RootSet(rho, theta))
    if kind == "random-real":
        n_real = int(rng.integers(0, N + 1))
        if (N - n_real) % 2:
            n_real += 1
        n_pairs = (N - n_real) // 2
        half = rng.uniform(0.0, 0.5, n_pairs)
        real = rng.choice([0.0, 0.5], n_real)
        theta = np.concatenate([half, -half, real])
        # multiply real factors so the coefficients are exactly real
        c = np.array([1.0])  # descending
        for t in half:
            c = np.convolve(c, [1.0, -2.0 * np.cos(2.0 * np.pi * t), 1.0])
        for t in real:
            c = np.convolve(c, [1.0, 1.0 if t else -1.0])
        return ComplexPolynomial(c[::-1][:-1].astype(complex), RootSet(np.ones(N), theta))
    raise InvalidArgument(f"unknown family {kind!r}; expected one of {KINDS}")


def random_class_a_polyline(rng, n_inner=None):
    """Random even, continuous, non-negative polyline on [-1/2, 1/2], unit mass.

    Interior breakpoints 0 = x_0 < x_1 < ... < 1/2 with values drawn
    uniformly, mirrored to the left half and pinned to 0 at +-1/2.
    """
    if n_inner is None:
        n_inner = int(rng.integers(1, 7))
    xs = np.sort(rng.uniform(0.02, 0.48, n_inner))
    xs = xs[np.diff(xs, prepend=0.0) > 1e-3]
    vals = rng.uniform(0.0, 1.0, xs.size)
    right = [(0.0, float(rng.uniform(0.1, 1.0)))] + list(zip(xs.tolist(), vals.tolist())) + [(0.5, 0.0)]
    left = [(-x, v) for x, v in reversed(right[1:])]
    F = PiecewiseLinear(left + right, name="random-class-a")
    return F.normalized()

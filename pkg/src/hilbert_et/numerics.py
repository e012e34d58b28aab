"""Small numerical utilities shared by the height and transform code."""

import warnings

import numpy as np
from scipy import integrate

from .errors import NumericFailure

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, a, b, xtol=1e-10, maxiter=200):
    """Golden-section search for a maximum of a unimodal scalar function."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if abs(b - a) <= xtol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    if fc >= fd:
        return c, fc
    return d, fd


def refine_maxima(f, x, y, top=5, xtol=1e-10):
    """Refine the ``top`` largest local maxima of sampled ``y = f(x)``.

    ``x`` must be sorted.  Each candidate i is bracketed by its neighbours and
    polished by golden-section search; the best (x, f(x)) over candidates and
    raw samples is returned.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    interior = np.flatnonzero((y[1:-1] >= y[:-2]) & (y[1:-1] >= y[2:])) + 1
    cand = np.concatenate([interior, [0, x.size - 1]])
    cand = cand[np.argsort(-y[cand], kind="stable")]
    best_i = int(np.argmax(y))
    best_x, best_y = float(x[best_i]), float(y[best_i])
    seen = 0
    for i in cand:
        if seen >= top:
            break
        seen += 1
        lo = x[max(i - 1, 0)]
        hi = x[min(i + 1, x.size - 1)]
        if hi <= lo:
            continue
        xm, ym = golden_max(f, lo, hi, xtol=xtol)
        if ym > best_y:
            best_x, best_y = float(xm), float(ym)
    return best_x, best_y


def extrapolate_zero(h, values, powers=None):
    """Richardson extrapolation of values(h) to h = 0.

    Fits values = v0 + sum_j c_j h^{powers[j]} on the last m samples for
    m = 1, 2, ... and returns the successive estimates of v0.  ``powers``
    defaults to 1, 2, 3, ... (plain polynomial extrapolation).
    """
    h = np.asarray(h, dtype=float)
    h = h / np.max(np.abs(h))  # v0 is scale-invariant; keeps tiny windows from underflowing
    v = np.asarray(values, dtype=float)
    n = h.size
    if powers is None:
        powers = np.arange(1, n)
    powers = np.asarray(powers, dtype=float)
    est = []
    for m in range(1, n + 1):
        hh = h[n - m:]
        A = np.column_stack([np.ones(m)] + [hh ** p for p in powers[:m - 1]])
        est.append(float(np.linalg.solve(A, v[n - m:])[0]))
    return est


def quad_split(f, a, b, points=(), epsabs=1e-12, epsrel=1e-12, limit=400):
    """Adaptive Gauss-Kronrod quadrature of f over [a, b] split at ``points``.

    Integrable endpoint singularities of each piece are left to QUADPACK's
    extrapolation.  Returns (value, error_estimate).
    """
    cuts = sorted({float(p) for p in points if a < p < b})
    edges = [a] + cuts + [b]
    total = 0.0
    err = 0.0
    worst = (0.0, a, b)
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo <= 0:
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, e = integrate.quad(f, lo, hi, epsabs=epsabs / len(edges), epsrel=epsrel, limit=limit)
        total += val
        err += e
        if e > worst[0]:
            worst = (e, lo, hi)
    if not np.isfinite(total):
        raise NumericFailure("quadrature produced a non-finite value", interval=(a, b), worst=worst)
    return total, err


def gauss_legendre(n, a=-1.0, b=1.0):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w

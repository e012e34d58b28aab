"""Line and periodic Hilbert transforms, their quadrature oracles, and the
rescaling identity linking ``delta H(f_delta)`` to ``H(F)``.

Conventions: ``H(F)(x) = p.v. (1/pi) int F(x - t)/t dt`` on the line and
``H(f)(theta) = p.v. int_{-1/2}^{1/2} f(theta - a) cot(pi a) da`` on R/Z,
whose Fourier multiplier is ``-i sgn(k)``.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .. import kernels
from ..errors import InvalidArgument, NumericFailure
from ..numerics import extrapolate_zero, gauss_legendre, golden_max, quad_split
from .functions import CompactFunction, Mollified, PiecewiseLinear, _cos_map_nodes

DEFAULT_K = 4096
LEMMA4_K = 256


# ---------------------------------------------------------------------------
# Fourier transform by quadrature (oracle for the closed forms)
# ---------------------------------------------------------------------------

def fourier_transform_hat(F, t, tolerance=1e-10):
    """int F(x) exp(-2 pi i t x) dx by adaptive quadrature.

    Inverse-square-root end behaviour (Chebyshev weight, MagicG) is removed
    by x = sin(phi)/2; the log singularity of MagicF at 0 is an endpoint of
    the split quadrature.  Oscillation is handled by QUADPACK's Fourier
    weight when |t| is large.
    """
    if not tolerance > 0:
        raise InvalidArgument("tolerance must be positive")
    t = float(t)
    w = 2.0 * np.pi * t
    name = getattr(F, "name", "")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if name in ("chebyshev", "magicG"):
            # F(sin(p)/2) cos(p)/2 is smooth in p on [-pi/2, pi/2]
            g = (lambda p: 0.5) if name == "chebyshev" else (lambda p: 0.5 * math.sin(p))
            re = integrate.quad(lambda p: g(p) * math.cos(w * 0.5 * math.sin(p)), -np.pi / 2, np.pi / 2,
                                epsabs=tolerance, limit=400)[0]
            im = -integrate.quad(lambda p: g(p) * math.sin(w * 0.5 * math.sin(p)), -np.pi / 2, np.pi / 2,
                                 epsabs=tolerance, limit=400)[0]
            return complex(re, im)
        f = lambda x: float(F(np.array([x]))[0])
        pts = sorted({-0.5, 0.5, *[p for p in F.singular_points if -0.5 <= p <= 0.5]})
        re = im = 0.0
        for a, b in zip(pts[:-1], pts[1:]):
            if abs(t) * (b - a) > 4.0:
                re += integrate.quad(f, a, b, weight="cos", wvar=w, epsabs=tolerance, limit=400)[0]
                im -= integrate.quad(f, a, b, weight="sin", wvar=w, epsabs=tolerance, limit=400)[0]
            else:
                re += integrate.quad(lambda x: f(x) * math.cos(w * x), a, b, epsabs=tolerance, limit=400)[0]
                im -= integrate.quad(lambda x: f(x) * math.sin(w * x), a, b, epsabs=tolerance, limit=400)[0]
    return complex(re, im)


# ---------------------------------------------------------------------------
# Line transform
# ---------------------------------------------------------------------------

def hilbert_line(F, x):
    """H(F)(x): exact for polylines, closed forms otherwise (see functions)."""
    return F.hilbert(x)


# The truncated integrand is even in the window variable and smooth near it,
# so the window integral differs from the limit by odd powers of eps only.
_ODD = tuple(range(1, 64, 2))


def _pv_extrapolate(integral, hs, tol, what):
    hs = np.asarray(hs, dtype=float)
    if hs.size < 2 or np.any(np.diff(hs) >= 0) or np.any(hs <= 0):
        raise InvalidArgument("epsilon schedule must be positive and decreasing")
    diag = extrapolate_zero(hs, [integral(h) for h in hs], _ODD[:hs.size - 1])
    est = diag[-1]
    err = abs(diag[-1] - diag[-2])
    if not np.isfinite(est) or err > tol:
        raise NumericFailure(f"{what}: principal-value extrapolation did not settle",
                             estimate=est, change=err, schedule=hs.tolist())
    return float(est)


def hilbert_line_pv_quadrature(F, x, epsilon_schedule=None, tolerance=1e-7):
    """Independent PV oracle: (1/pi) int_eps^inf (F(x-t) - F(x+t))/t dt.

    The symmetric-window integrals for eps_j = eps_0 2^{-j} (j = 0..3 by
    default, eps_0 = min(1e-2, distance to the nearest singular point / 4))
    are Richardson-extrapolated to eps -> 0 in odd powers of eps.
    """
    x = float(x)
    if any(x == s for s in F.hilbert_singular):
        raise InvalidArgument("H(F) is infinite at x (jump or blow-up of F)")
    sing = np.asarray(F.singular_points, dtype=float)
    gaps = np.abs(sing - x)
    gaps = gaps[gaps > 0]
    dist = float(gaps.min()) if gaps.size else 1.0
    f = lambda y: float(F(np.array([y]))[0])
    T = abs(x) + 0.5
    cuts = sorted({abs(x - s) for s in sing} | {abs(x + s) for s in sing})

    def integral(eps):
        g = lambda t: (f(x - t) - f(x + t)) / t
        v, _ = quad_split(g, eps, T, points=cuts, epsabs=1e-12, epsrel=1e-12)
        return v / np.pi

    if epsilon_schedule is None:
        epsilon_schedule = min(1e-2, dist / 4.0, F.length_scale) * 0.5 ** np.arange(4)
    return _pv_extrapolate(integral, epsilon_schedule, tolerance, "line transform")


# ---------------------------------------------------------------------------
# Periodization
# ---------------------------------------------------------------------------

class PeriodizedFunction:
    """f_delta(theta) = sum_k F_delta(theta + k), F_delta(x) = F(x/delta)/delta."""

    def __init__(self, base, delta):
        if not 0.0 < delta <= 1.0:
            raise InvalidArgument("delta must lie in (0, 1]")
        self.base = base
        self.delta = float(delta)

    def __call__(self, theta):
        th = np.asarray(theta, dtype=float)
        y = th - np.round(th)
        return self.base(y / self.delta) / self.delta

    def hat(self, k):
        return self.base.hat(self.delta * np.asarray(k, dtype=float))

    @property
    def singular_points(self):
        return tuple(self.delta * p for p in self.base.singular_points)

    @property
    def hilbert_singular(self):
        return tuple(self.delta * p for p in self.base.hilbert_singular)


def _as_periodized(pf):
    if isinstance(pf, PeriodizedFunction):
        return pf
    if isinstance(pf, CompactFunction):
        return PeriodizedFunction(pf, 1.0)
    raise InvalidArgument("expected a PeriodizedFunction")


@dataclass
class PeriodicInfo:
    K: int
    K_eff: int
    tail_estimate: float
    truncation_warning: bool


_COEFF_CACHE = {}


def _coefficients(pf, K):
    key = (id(pf.base), pf.delta, K)
    hit = _COEFF_CACHE.get(key)
    if hit is not None and hit[0] is pf.base:
        return hit[1]
    c = pf.hat(np.arange(1, K + 1))
    if len(_COEFF_CACHE) > 64:
        _COEFF_CACHE.clear()
    _COEFF_CACHE[key] = (pf.base, c)
    return c


def _tail_estimate(c):
    """Envelope A k^-p fitted on the last half of |c_k|; returns sum_{k>K} 2 A k^-p."""
    K = c.size
    mag = np.abs(c)
    if K < 16 or not np.any(mag):
        return 0.0
    q = K // 4
    m1 = max(mag[K // 2:K // 2 + q].max(), 1e-300)
    m2 = mag[K - q:].max()
    if m2 < 1e-290:
        return 0.0
    k1, k2 = K // 2 + q / 2, K - q / 2
    p = math.log(m1 / m2) / math.log(k2 / k1)
    if p <= 1.05:
        return float("inf")
    A = m2 * k2 ** p
    return 2.0 * A * K ** (1.0 - p) / (p - 1.0)


def effective_K(K, delta):
    """Series cutoff scaled with 1/delta so that delta K_eff covers the same
    frequency band of F-hat for every delta."""
    return int(math.ceil(K / delta))


def hilbert_periodic(pf, theta, K=DEFAULT_K, tolerance=1e-6, return_info=False, scale_with_delta=True):
    """Multiplier series sum_{0<|k|<=K'} -i sgn(k) F-hat(delta k) e^{2 pi i k theta}.

    K' = ceil(K/delta) unless ``scale_with_delta`` is False.  Real input gives
    the real series 2 sum_k Im(F-hat(delta k) e^{2 pi i k theta}).  The tail is
    estimated from the decay of the last coefficients and reported in the
    metadata (``return_info=True``).
    """
    pf = _as_periodized(pf)
    if K < 64:
        raise InvalidArgument("K must be at least 64")
    K_eff = effective_K(K, pf.delta) if scale_with_delta else int(K)
    c = _coefficients(pf, K_eff)
    th = np.asarray(theta, dtype=float)
    flat = np.ascontiguousarray(np.atleast_1d(th).ravel())
    vals = kernels.trig_series(flat, np.ascontiguousarray(c.real), np.ascontiguousarray(c.imag))
    vals = vals.reshape(th.shape)
    out = vals if vals.ndim else float(vals)
    if not return_info:
        return out
    tail = _tail_estimate(c)
    return out, PeriodicInfo(K=int(K), K_eff=K_eff, tail_estimate=tail, truncation_warning=bool(tail > tolerance))


def clausen2(x):
    """Cl_2(x) = sum_{k>=1} sin(k x)/k^2 = Im Li_2(e^{ix})."""
    x = np.asarray(x, dtype=float)
    xr = np.mod(x + np.pi, 2.0 * np.pi) - np.pi
    # scipy's spence(z) = Li_2(1 - z)
    out = np.imag(special.spence(1.0 - np.exp(1j * xr)))
    return out


def hilbert_periodic_exact(pf, theta):
    """Exact H(f_delta) for a polyline base, summing the multiplier series in
    closed form.

    With F'' = sum_j c_j delta_{x_j} + J_j delta'_{x_j}, the series collapses to
    sum_j [ -c_j Cl_2(2 pi u_j) / (2 pi^2 delta^2) + J_j log|2 sin(pi u_j)| / (pi delta) ]
    with u_j = theta - delta x_j.
    """
    pf = _as_periodized(pf)
    if not isinstance(pf.base, PiecewiseLinear):
        raise InvalidArgument("closed-form periodic transform needs a polyline base")
    d = pf.delta
    xj, cj, Jj = pf.base.derivative_jumps()
    th = np.asarray(theta, dtype=float)
    u = np.atleast_1d(th).ravel()[:, None] - d * xj[None, :]
    out = -(clausen2(2.0 * np.pi * u) @ cj) / (2.0 * np.pi ** 2 * d * d)
    if np.any(Jj != 0):
        with np.errstate(divide="ignore"):
            out += (np.log(np.abs(2.0 * np.sin(np.pi * u))) @ Jj) / (np.pi * d)
    out = out.reshape(th.shape)
    return out if out.ndim else float(out)


def hilbert_periodic_cot_quadrature(pf, theta, epsilon_schedule=None, tolerance=1e-7):
    """Independent oracle: int_eps^{1/2} (f(theta-a) - f(theta+a)) cot(pi a) da,
    extrapolated to eps -> 0 like the line oracle."""
    pf = _as_periodized(pf)
    theta = float(theta)
    sing = np.asarray(pf.singular_points, dtype=float)

    def wrapdist(a, b):
        d = (a - b) % 1.0
        return min(d, 1.0 - d)

    if any(wrapdist(theta, s) == 0.0 for s in pf.hilbert_singular):
        raise InvalidArgument("H(f) is infinite at theta (jump or blow-up of f)")
    gaps = [d for d in (wrapdist(theta, s) for s in sing) if d > 0.0]
    dist = min(gaps) if gaps else 0.5
    f = lambda y: float(pf(np.array([y]))[0])
    cuts = set()
    for s in sing:
        for sign in (1.0, -1.0):
            a = (sign * (theta - s)) % 1.0
            cuts.add(a if a <= 0.5 else None)
            cuts.add(1.0 - a if 1.0 - a <= 0.5 else None)
    cuts = sorted(c for c in cuts if c is not None)

    def integral(eps):
        g = lambda a: (f(theta - a) - f(theta + a)) / math.tan(math.pi * a)
        v, _ = quad_split(g, eps, 0.5, points=cuts, epsabs=1e-12, epsrel=1e-12)
        return v

    if epsilon_schedule is None:
        eps0 = min(1e-2, dist / 4.0, pf.delta * pf.base.length_scale)
        epsilon_schedule = eps0 * 0.5 ** np.arange(4)
    return _pv_extrapolate(integral, epsilon_schedule, tolerance, "periodic transform")


# ---------------------------------------------------------------------------
# Rescaling identity
# ---------------------------------------------------------------------------

def _half_support_nodes(F, n=24):
    """Quadrature nodes/weights on [0, 1/2] for int_0^{1/2} F(b) g(b) db."""
    pts = sorted({0.0, 0.5, *[p for p in F.singular_points if 0.0 < p < 0.5]})
    nodes, weights = [], []
    for a, b in zip(pts[:-1], pts[1:]):
        if isinstance(F, PiecewiseLinear):
            x, w = gauss_legendre(n, a, b)  # F linear on the piece: exact up to the kernel
        else:
            x, w = _cos_map_nodes(np.array([a]), np.array([b]), 4 * n)
            x, w = x[0], w[0]
        nodes.append(x)
        weights.append(w)
    x = np.concatenate(nodes)
    return x, np.concatenate(weights) * F(x)


def lemma4_rhs(F, delta, theta, K=LEMMA4_K, tail_correction=True):
    """H(F)(theta/delta) + (delta/pi) sum_{k=1}^{K} int_0^{delta/2} f_delta(a) k_k(theta, a) da,

    with k_k(theta, a) = 4 theta (theta^2 - a^2 - k^2) / (((theta-a)^2 - k^2)((theta+a)^2 - k^2)).
    The a-integral is taken over F's own variable b = a/delta.  The k > K
    remainder is added from the expansion
    k_k = -4 theta/k^2 - 4 theta (theta^2 + 3 a^2)/k^4 + O(k^-6),
    summed with the trigamma and Hurwitz zeta functions.
    """
    if not 0.0 < delta <= 1.0:
        raise InvalidArgument("delta must lie in (0, 1]")
    th = np.asarray(theta, dtype=float)
    flat = np.atleast_1d(th).ravel()
    if np.any(np.abs(flat) >= 0.5):
        raise InvalidArgument("theta must lie in (-1/2, 1/2)")
    if K < 16:
        raise InvalidArgument("K must be at least 16")
    b, w = _half_support_nodes(F)
    alpha = delta * b
    ksum = kernels.rescaling_ksum(np.ascontiguousarray(flat), np.ascontiguousarray(alpha),
                                  np.ascontiguousarray(w), int(K))
    if tail_correction:
        s2 = float(special.polygamma(1, K + 1))
        s4 = float(special.zeta(4, K + 1))
        m0 = w.sum()
        m2 = w @ (alpha ** 2)
        ksum += -4.0 * flat * (s2 * m0 + s4 * (flat ** 2 * m0 + 3.0 * m2))
    out = F.hilbert(flat / delta) + delta / np.pi * ksum
    out = out.reshape(th.shape)
    return out if out.ndim else float(out)


def cot_expansion_check(alpha, K):
    """(1/pi)(1/alpha + sum_{k<=K} 2 alpha/(alpha^2 - k^2)), which tends to cot(pi alpha)."""
    alpha = float(alpha)
    if alpha == round(alpha):
        raise InvalidArgument("alpha must not be an integer")
    k = np.arange(1, int(K) + 1, dtype=float)
    terms = 2.0 * alpha / (alpha * alpha - k * k)
    return (1.0 / alpha + math.fsum(terms[::-1])) / np.pi


# ---------------------------------------------------------------------------
# Sampled transforms with refined extrema
# ---------------------------------------------------------------------------

@dataclass
class TransformGrid:
    domain: str
    x: np.ndarray
    values: np.ndarray
    sup_norm: float
    argmax: float
    truncation_K: int = 0
    tail_estimate: float = 0.0
    metadata: dict = field(default_factory=dict)

    @property
    def samples(self):
        return list(zip(self.x.tolist(), self.values.tolist()))


def _refine_abs(f, x, y, top=5, xtol=1e-10):
    """Largest |f| near the ``top`` best samples, by golden-section search."""
    ay = np.abs(y)
    order = np.argsort(-ay, kind="stable")
    best_i = int(order[0])
    best_x, best_y = float(x[best_i]), float(ay[best_i])
    taken = []
    for i in order:
        if len(taken) >= top:
            break
        if any(abs(int(i) - j) <= 1 for j in taken):
            continue
        taken.append(int(i))
        lo, hi = x[max(i - 1, 0)], x[min(i + 1, x.size - 1)]
        if hi <= lo:
            continue
        xm, ym = golden_max(lambda t: abs(f(t)), lo, hi, xtol=xtol)
        if ym > best_y:
            best_x, best_y = float(xm), float(ym)
    return best_x, best_y


def line_grid(F, grid=2048, lo=-1.0, hi=1.0, refine=True):
    """Sample H(F) on [lo, hi] and locate |H(F)|'s maximum.

    Singular points of the closed form are nudged off the grid.  For F
    supported in [-1/2, 1/2] with unit mass, |H(F)(x)| <= 1/(pi(|x| - 1/2)),
    which is below 1 for |x| >= 1, so [-1, 1] suffices for norms >= 1.
    """
    x = np.linspace(lo, hi, int(grid) + 1)
    for s in F.hilbert_singular:
        x[np.abs(x - s) <= 1e-12] += 1e-9
    y = F.hilbert(x)
    if refine:
        f = lambda t: _safe_scalar(F.hilbert, t)
        xm, ym = _refine_abs(f, x, y)
    else:
        i = int(np.argmax(np.abs(y)))
        xm, ym = float(x[i]), float(abs(y[i]))
    return TransformGrid("real-line", x, y, ym, xm)


def _safe_scalar(fun, t):
    try:
        return float(fun(np.array([t]))[0])
    except Exception:  # singular point inside a refinement bracket
        return 0.0


def circle_grid(pf, grid=2048, K=DEFAULT_K, refine=True, method="auto", tolerance=1e-6):
    """Sample H(f_delta) on [-1/2, 1/2] (plus a local grid on [-2 delta, 2 delta]
    for small delta, where the peak sits near delta * argmax_line)."""
    pf = _as_periodized(pf)
    x = np.linspace(-0.5, 0.5, int(grid) + 1)
    if pf.delta < 0.25:
        x = np.union1d(x, np.linspace(-2.0 * pf.delta, 2.0 * pf.delta, int(grid) + 1))
    use_exact = method == "exact" or (method == "auto" and isinstance(pf.base, PiecewiseLinear))
    meta = {"method": "clausen" if use_exact else "multiplier"}
    if use_exact:
        fun = lambda t: hilbert_periodic_exact(pf, t)
        y = fun(x)
        Kt, tail = 0, 0.0
    else:
        y, info = hilbert_periodic(pf, x, K=K, tolerance=tolerance, return_info=True)
        fun = lambda t: hilbert_periodic(pf, t, K=K)
        Kt, tail = info.K_eff, info.tail_estimate
        meta["truncation_warning"] = info.truncation_warning
    if refine:
        xm, ym = _refine_abs(lambda t: _safe_scalar(fun, t), x, y)
    else:
        i = int(np.argmax(np.abs(y)))
        xm, ym = float(x[i]), float(abs(y[i]))
    return TransformGrid("circle", x, y, ym, xm, truncation_K=Kt, tail_estimate=tail, metadata=meta)

"""Height functionals of a monic polynomial on the unit circle.

``h(P)`` is the mean of log+ of |P|/sqrt|a_0| over the circle, ``H_log`` is
the log of its maximum, ``logM`` measures how far the root moduli stray from
1, and the Jensen integral is the circle mean of log|P|.
"""

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import InvalidArgument, NumericFailure
from .numerics import quad_split, refine_maxima
from .polynomial import ComplexPolynomial, find_roots

_UNIT_ATOL = 1e-12


@dataclass(frozen=True)
class HeightReport:
    h: float
    H_log: float
    logM: float
    jensen: float

    def as_dict(self):
        return asdict(self)


def _normalized_log(p):
    half_log_a0 = 0.5 * p.log_abs_a0

    def g(theta):
        return p.log_abs_on_circle(theta) - half_log_a0

    return g


def _positive_intervals(g, n, hints=()):
    """Intervals of [0, 1] on which g > 0, ends located by Brent's method."""
    x = np.union1d(np.linspace(0.0, 1.0, n + 1), np.mod(np.asarray(hints, dtype=float), 1.0))
    y = g(x)
    pos = y > 0
    if pos.all():
        return [(0.0, 1.0)]
    if not pos.any():
        return []
    scalar = lambda t: float(g(np.array([t]))[0])
    edges = []
    for i in np.flatnonzero(pos[1:] != pos[:-1]):
        a, b = x[i], x[i + 1]
        if np.isfinite(y[i]) and np.isfinite(y[i + 1]):
            r = optimize.brentq(scalar, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        else:
            # one end sits on a circle root (log = -inf); bisect
            lo, hi = (a, b) if pos[i + 1] else (b, a)
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if g(np.array([mid]))[0] > 0:
                    hi = mid
                else:
                    lo = mid
            r = 0.5 * (lo + hi)
        edges.append((r, bool(pos[i + 1])))  # True: entering a positive run
    out = []
    start = 0.0 if pos[0] else None
    for r, entering in edges:
        if entering:
            start = r
        else:
            out.append((start, r))
            start = None
    if start is not None:
        out.append((start, 1.0))
    return out


def height_h(p, tolerance=1e-10, grid=None):
    """h(P) by adaptive quadrature of the positive part of log|P|/sqrt|a_0|.

    The integrand log+ is continuous with kinks where |P| = sqrt|a_0|.  Those
    points are located (grid sign changes refined by Brent) and the smooth
    positive pieces are integrated with adaptive Gauss-Kronrod, using root
    angles as extra breakpoints.
    """
    if not isinstance(p, ComplexPolynomial):
        raise InvalidArgument("expected a ComplexPolynomial")
    if not tolerance > 0:
        raise InvalidArgument("tolerance must be positive")
    roots = find_roots(p)
    g = _normalized_log(p)
    n = grid or max(4096, 64 * p.degree)
    pieces = _positive_intervals(g, n, roots.theta)
    if not pieces:
        return 0.0
    scalar = lambda t: float(g(np.array([t]))[0])
    total = 0.0
    err = 0.0
    worst = None
    for a, b in pieces:
        val, e = quad_split(scalar, a, b, points=roots.theta, epsabs=tolerance / (2 * len(pieces)), epsrel=1e-14)
        total += val
        err += e
        if worst is None or e > worst[0]:
            worst = (e, a, b)
    if err > tolerance:
        raise NumericFailure("h(P) quadrature did not reach tolerance", error=err, worst_subinterval=worst[1:])
    return total


def height_H(p, grid=2048):
    """log max over the circle of |P|/sqrt|a_0| (grid, then golden-section)."""
    if grid < 256:
        raise InvalidArgument("grid must be at least 256")
    g = _normalized_log(p)
    n = max(grid, 16 * p.degree)
    x = np.linspace(0.0, 1.0, n + 1)
    y = g(x)
    _, best = refine_maxima(lambda t: float(g(np.array([t]))[0]), x, y, top=5)
    return best


def height_logM(roots):
    """sum_j log max(rho_j, 1/rho_j); exact, no quadrature."""
    if not np.all(roots.rho > 0):
        raise InvalidArgument("root moduli must be positive")
    return float(np.sum(np.abs(np.log(roots.rho))))


def jensen_integral(roots):
    """Closed form of the circle mean of log|P|: sum_j log max(rho_j, 1)."""
    return float(np.sum(np.maximum(np.log(roots.rho), 0.0)))


def _log_antiderivative(u):
    # d/du (u log|u| - u) = log|u|, continuous at 0 with value 0
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(u == 0.0, 0.0, u * np.log(np.abs(u)) - u)


def jensen_quadrature(p, tolerance=1e-10, window=1e-2):
    """Direct quadrature of the circle mean of log|P| (oracle for Jensen).

    A window of total width ``window`` around every unit-modulus root angle
    is treated by subtracting m log|theta - theta_j|, whose integral is taken
    analytically; the smooth remainder and the rest of the circle go to
    adaptive quadrature.
    """
    roots = find_roots(p)
    on = np.abs(roots.rho - 1.0) <= _UNIT_ATOL
    sing = np.sort(roots.theta[on])
    near = roots.theta[~on]
    # cut the circle in the widest gap between singular angles
    if sing.size:
        gaps = np.diff(np.concatenate([sing, [sing[0] + 1.0]]))
        k = int(np.argmax(gaps))
        origin = sing[k] + 0.5 * gaps[k]
    else:
        origin = 0.0
    lo, hi = origin, origin + 1.0
    s = np.sort(np.mod(sing - lo, 1.0) + lo)
    w = 0.5 * window
    segments = []
    for t in s:
        a, b = max(t - w, lo), min(t + w, hi)
        if segments and a <= segments[-1][1]:
            segments[-1][1] = b
        else:
            segments.append([a, b])
    near_pts = np.mod(near - lo, 1.0) + lo
    logp = lambda t: float(p.log_abs_on_circle(np.array([t]))[0])
    total = 0.0
    cursor = lo
    eps = tolerance / (4 * (len(segments) + 1))
    for a, b in segments:
        if a > cursor:
            total += quad_split(logp, cursor, a, points=near_pts, epsabs=eps)[0]
        inside = s[(s >= a) & (s <= b)]
        total += float(np.sum(_log_antiderivative(b - inside) - _log_antiderivative(a - inside)))

        def remainder(t, inside=inside):
            with np.errstate(divide="ignore"):
                return logp(t) - float(np.sum(np.log(np.abs(t - inside))))

        total += quad_split(remainder, a, b, points=np.concatenate([inside, near_pts]), epsabs=eps)[0]
        cursor = b
    if cursor < hi:
        total += quad_split(logp, cursor, hi, points=near_pts, epsabs=eps)[0]
    return total


def psi_fourier(k):
    """Fourier coefficient of log|2 sin(pi theta)|: 0 at k = 0, else -1/(2|k|)."""
    k = int(k)
    return 0.0 if k == 0 else -1.0 / (2.0 * abs(k))


def psi_fourier_quadrature(k, tolerance=1e-12):
    """Quadrature of int_0^1 log|2 sin(pi theta)| e^{2 pi i k theta} d theta.

    By symmetry this is 2 int_0^{1/2} log(2 sin pi theta) cos(2 pi k theta).
    The log singularity at 0 is split off as log(theta) and integrated with
    a logarithmic-weight rule; the rest, log(2 pi sinc theta), is smooth.
    """
    c = lambda t: math.cos(2.0 * math.pi * k * t)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        sing, _ = integrate.quad(c, 0.0, 0.5, weight="alg-loga", wvar=(0.0, 0.0), epsabs=tolerance)
        smooth, _ = integrate.quad(
            lambda t: math.log(2.0 * math.pi * np.sinc(t)) * c(t), 0.0, 0.5, epsabs=tolerance, limit=200
        )
    return 2.0 * (sing + smooth)


def height_report(p, tolerance=1e-10, grid=2048):
    roots = find_roots(p)
    return HeightReport(
        h=height_h(p, tolerance),
        H_log=height_H(p, grid),
        logM=height_logM(roots),
        jensen=jensen_integral(roots),
    )

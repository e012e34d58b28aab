"""Compactly supported test functions and their closed-form transforms.

Every function lives on [-1/2, 1/2] and exposes point values, the Fourier
transform ``hat(t) = int F(x) exp(-2 pi i t x) dx`` and the line Hilbert
transform ``hilbert(x) = p.v. (1/pi) int F(x - t) / t dt``.
"""

import json
import math
import os
from functools import cached_property

import numpy as np
from scipy import special
from scipy.interpolate import CubicSpline

from ..errors import InvalidArgument, SingularPoint
from ..numerics import gauss_legendre

_TOL = 1e-12


def _phi_log(u):
    """u log|u| - u, the antiderivative of log|u| (0 at u = 0)."""
    u = np.asarray(u, dtype=float)
    out = -u.copy()
    nz = u != 0.0
    out[nz] += u[nz] * np.log(np.abs(u[nz]))
    return out


def _series_e(g, order):
    """int_0^1 y^order exp(g y) dy for complex g, stable for all |g|."""
    g = np.asarray(g, dtype=complex)
    out = np.empty_like(g)
    small = np.abs(g) < 0.5
    if np.any(small):
        gs = g[small]
        acc = np.zeros_like(gs)
        term = np.ones_like(gs)
        for m in range(20):
            acc += term / (m + 1 + order)
            term = term * gs / (m + 1)
        out[small] = acc
    big = ~small
    if np.any(big):
        gb = g[big]
        e = np.exp(gb)
        if order == 0:
            out[big] = (e - 1.0) / gb
        else:
            out[big] = e / gb - (e - 1.0) / gb ** 2
    return out


class CompactFunction:
    """Base class.  Subclasses implement ``_value``, ``_hat`` and ``_hilbert``."""

    name = "compact"
    parity = "none"  # "even", "odd" or "none"
    continuous = True
    nonnegative = True
    radial_decreasing = False
    # points where F or H(F) is not smooth (quadrature breakpoints)
    singular_points = (-0.5, 0.5)
    # points where the closed-form H(F) jumps or blows up
    hilbert_singular = ()
    # width of the narrowest smooth feature; caps the PV oracles' window
    length_scale = 1.0

    # -- class membership ---------------------------------------------------
    @property
    def class_a(self):
        """Even, continuous and non-negative on the support."""
        return self.parity == "even" and self.continuous and self.nonnegative

    @property
    def class_a_star(self):
        return self.nonnegative

    @property
    def mass(self):
        return float(np.real(self._hat(np.zeros(1))[0]))

    @property
    def l1_norm(self):
        return abs(self.mass) if self.nonnegative else self._l1()

    def _l1(self):  # pragma: no cover - overridden where needed
        raise NotImplementedError

    @property
    def normalized_l1(self):
        return abs(self.l1_norm - 1.0) <= 1e-10

    # -- evaluation -----------------------------------------------------------
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        inside = np.abs(x) <= 0.5
        if np.any(inside):
            out[inside] = self._value(x[inside])
        return out if out.ndim else float(out)

    def hat(self, t):
        t = np.asarray(t, dtype=float)
        out = self._hat(np.atleast_1d(t).ravel()).reshape(t.shape)
        return out if out.ndim else complex(out)

    def hilbert(self, x):
        x = np.asarray(x, dtype=float)
        xf = np.atleast_1d(x).ravel()
        for s in self.hilbert_singular:
            if np.any(np.abs(xf - s) <= _TOL):
                raise SingularPoint(f"H({self.name}) is singular at x = {s}")
        out = self._hilbert(xf).reshape(x.shape)
        return out if out.ndim else float(out)

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class PiecewiseLinear(CompactFunction):
    """Polyline through ``points`` = [(x0, v0), ..., (xm, vm)], zero outside.

    The x's must increase strictly and lie in [-1/2, 1/2].  Non-zero end
    values are allowed (the function then jumps to 0 there).
    """

    def __init__(self, points, name="polyline"):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise InvalidArgument("need at least two (x, value) breakpoints")
        x, v = pts[:, 0], pts[:, 1]
        if not np.all(np.diff(x) > 0):
            raise InvalidArgument("breakpoint abscissae must increase strictly")
        if x[0] < -0.5 - _TOL or x[-1] > 0.5 + _TOL:
            raise InvalidArgument("breakpoints must lie in [-1/2, 1/2]")
        self.x = np.clip(x, -0.5, 0.5)
        self.v = v
        self.name = name
        self.slopes = np.diff(v) / np.diff(x)
        self.continuous = bool(abs(v[0]) <= _TOL and abs(v[-1]) <= _TOL)
        self.nonnegative = bool(np.all(v >= -_TOL))
        self.parity = self._detect_parity()
        self.singular_points = tuple(float(t) for t in self.x)
        self.hilbert_singular = tuple(
            float(t) for t, val in ((self.x[0], v[0]), (self.x[-1], v[-1])) if abs(val) > _TOL
        )
        self.radial_decreasing = bool(
            self.parity == "even" and self.continuous and np.all(self.slopes[self.x[1:] > 0] <= _TOL)
            and np.all(self.slopes[self.x[:-1] < 0] >= -_TOL)
        )

    def _detect_parity(self):
        if np.allclose(self.x, -self.x[::-1], atol=_TOL, rtol=0):
            if np.allclose(self.v, self.v[::-1], atol=_TOL, rtol=0):
                return "even"
            if np.allclose(self.v, -self.v[::-1], atol=_TOL, rtol=0):
                return "odd"
        return "none"

    @classmethod
    def from_json(cls, obj, name="polyline"):
        pts = obj["breakpoints"] if isinstance(obj, dict) else obj
        return cls([(float(p[0]), float(p[1])) for p in pts], name=name)

    def normalized(self):
        """Copy scaled to unit L1 norm."""
        return PiecewiseLinear(np.column_stack([self.x, self.v / self.l1_norm]), name=self.name)

    def _l1(self):
        total = 0.0
        for x0, x1, v0, v1 in zip(self.x[:-1], self.x[1:], self.v[:-1], self.v[1:]):
            if v0 * v1 >= 0:
                total += 0.5 * (abs(v0) + abs(v1)) * (x1 - x0)
            else:
                r = abs(v0) / (abs(v0) + abs(v1))
                total += 0.5 * (x1 - x0) * (abs(v0) * r + abs(v1) * (1 - r))
        return total

    @property
    def mass(self):
        return float(np.sum(0.5 * (self.v[:-1] + self.v[1:]) * np.diff(self.x)))

    def _value(self, x):
        out = np.interp(x, self.x, self.v, left=0.0, right=0.0)
        out[(x < self.x[0]) | (x > self.x[-1])] = 0.0
        return out

    def _hat(self, t):
        # per segment: exp(-i w a) * L * int_0^1 (v0 + (v1 - v0) y) exp(-i w L y) dy
        w = 2.0 * np.pi * t[:, None]
        a = self.x[None, :-1]
        L = np.diff(self.x)[None, :]
        g = -1j * w * L
        e0 = _series_e(g, 0)
        e1 = _series_e(g, 1)
        v0 = self.v[None, :-1]
        dv = np.diff(self.v)[None, :]
        seg = np.exp(-1j * w * a) * L * (v0 * e0 + dv * e1)
        return seg.sum(axis=1)

    def _hilbert(self, x):
        # (1/pi) [ sum_m b_m (Phi(x - t_m) - Phi(x - t_{m+1}))
        #          - F(t_last) log|x - t_last| + F(t_first) log|x - t_first| ]
        u = x[:, None] - self.x[None, :]
        Phi = _phi_log(u)
        acc = (self.slopes[None, :] * (Phi[:, :-1] - Phi[:, 1:])).sum(axis=1)
        with np.errstate(divide="ignore"):
            if self.v[-1] != 0.0:
                acc -= self.v[-1] * np.log(np.abs(u[:, -1]))
            if self.v[0] != 0.0:
                acc += self.v[0] * np.log(np.abs(u[:, 0]))
        return acc / np.pi

    def derivative_jumps(self):
        """(x_j, slope change c_j, value jump J_j) at every breakpoint."""
        s = np.concatenate([[0.0], self.slopes, [0.0]])
        c = np.diff(s)
        J = np.zeros_like(self.x)
        J[0] += self.v[0]
        J[-1] -= self.v[-1]
        return self.x.copy(), c, J


def Triangle():
    """2 max(1 - 2|x|, 0): unit mass, height 2."""
    return PiecewiseLinear([(-0.5, 0.0), (0.0, 2.0), (0.5, 0.0)], name="triangle")


def Outlier():
    """Unit-mass even polyline vanishing on |x| <= 1/4, peak 4 at |x| = 5/16."""
    pts = [(-0.5, 0.0), (-5 / 16, 4.0), (-0.25, 0.0), (0.25, 0.0), (5 / 16, 4.0), (0.5, 0.0)]
    return PiecewiseLinear(pts, name="outlier")


class MagicF(CompactFunction):
    """(2/pi) log((1 + sqrt(1 - 4x^2)) / (2|x|)) on |x| < 1/2.

    Unit mass, log singularity at 0.  H(F) = sgn(x) on the support.
    """

    name = "magicF"
    parity = "even"
    continuous = False
    radial_decreasing = True
    singular_points = (-0.5, 0.0, 0.5)

    @property
    def mass(self):
        return 1.0

    def _value(self, x):
        ax = np.abs(x)
        out = np.zeros_like(ax)
        pos = ax > 0
        with np.errstate(divide="ignore"):
            out[pos] = (2.0 / np.pi) * np.arccosh(np.minimum(1.0 / (2.0 * ax[pos]), 1e300))
        out[~pos] = np.inf
        return out

    def _hat(self, t):
        # (1/a) int_0^a J0(s) ds with a = pi |t|
        a = np.pi * np.abs(t)
        out = np.empty_like(a)
        small = a < 1e-2
        s = a[small]
        out[small] = 1.0 - s ** 2 / 12.0 + s ** 4 / 320.0 - s ** 6 / 16128.0
        b = a[~small]
        j0, j1 = special.j0(b), special.j1(b)
        h0, h1 = special.struve(0, b), special.struve(1, b)
        out[~small] = (b * j0 + 0.5 * np.pi * b * (j1 * h0 - j0 * h1)) / b
        return out.astype(complex)

    def _hilbert(self, x):
        ax = np.abs(x)
        out = np.sign(x).astype(float)
        out_ = ax > 0.5
        out[out_] = (2.0 / np.pi) * np.arcsin(1.0 / (2.0 * x[out_]))
        return out


class MagicG(CompactFunction):
    """2x / sqrt(1 - 4x^2) on |x| < 1/2; odd, unit L1 norm, H(G) = -1 inside."""

    name = "magicG"
    parity = "odd"
    continuous = False
    nonnegative = False
    hilbert_singular = (-0.5, 0.5)

    @property
    def mass(self):
        return 0.0

    def _l1(self):
        return 1.0

    def _value(self, x):
        # the edge singularity is integrable; a node rounded onto |x| = 1/2 counts as 0
        d = 1.0 - 4.0 * x * x
        return np.where(d > 0.0, 2.0 * x / np.sqrt(np.where(d > 0.0, d, 1.0)), 0.0)

    def _hat(self, t):
        return -0.5j * np.pi * special.j1(np.pi * t)

    def _hilbert(self, x):
        ax = np.abs(x)
        out = -np.ones_like(ax)
        o = ax > 0.5
        out[o] += 2.0 * ax[o] / np.sqrt(4.0 * ax[o] ** 2 - 1.0)
        return out


class ChebyshevWeight(CompactFunction):
    """(1 - 4x^2)^(-1/2) on |x| < 1/2 (mass pi/2); H vanishes inside."""

    name = "chebyshev"
    parity = "even"
    continuous = False
    hilbert_singular = (-0.5, 0.5)

    @property
    def mass(self):
        return 0.5 * np.pi

    def _value(self, x):
        d = 1.0 - 4.0 * x * x
        return np.where(d > 0.0, 1.0 / np.sqrt(np.where(d > 0.0, d, 1.0)), 0.0)

    def _hat(self, t):
        return (0.5 * np.pi * special.j0(np.pi * t)).astype(complex)

    def _hilbert(self, x):
        ax = np.abs(x)
        out = np.zeros_like(ax)
        o = ax > 0.5
        out[o] = np.sign(x[o]) / np.sqrt(4.0 * ax[o] ** 2 - 1.0)
        return out


# ---------------------------------------------------------------------------
# Mollifier phi = psi * psi with psi the standard bump on [-1/4, 1/4]
# ---------------------------------------------------------------------------

def _bump(x):
    y = 4.0 * np.asarray(x, dtype=float)
    out = np.zeros(y.shape)
    m = np.abs(y) < 1.0
    out[m] = np.exp(-1.0 / (1.0 - y[m] ** 2))
    return out


class _Mollifier:
    """phi = psi * psi (support [-1/2, 1/2], unit mass) and its transform."""

    def __init__(self, table_size=4097, nodes=160):
        u, w = gauss_legendre(400, -0.25, 0.25)
        self.psi_mass = float(w @ _bump(u))
        z = np.linspace(-0.5, 0.5, table_size)
        lo = np.maximum(-0.25, z - 0.25)
        hi = np.minimum(0.25, z + 0.25)
        g, gw = gauss_legendre(nodes, 0.0, 1.0)
        uu = lo[:, None] + (hi - lo)[:, None] * g[None, :]
        ww = (hi - lo)[:, None] * gw[None, :]
        vals = (ww * _bump(uu) * _bump(z[:, None] - uu)).sum(axis=1) / self.psi_mass ** 2
        self._spline = CubicSpline(z, vals, bc_type="clamped")

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        out = np.where(np.abs(z) < 0.5, self._spline(np.clip(z, -0.5, 0.5)), 0.0)
        return np.maximum(out, 0.0)

    @cached_property
    def _psi_nodes(self):
        u, w = gauss_legendre(4096, -0.25, 0.25)
        return u, w * _bump(u) / self.psi_mass

    def psi_hat(self, s):
        """Fourier transform of the normalised bump (real, even)."""
        s = np.abs(np.asarray(s, dtype=float))
        flat = s.ravel()
        out = np.zeros(flat.shape)
        u, w = self._psi_nodes
        # beyond s = 1500 the transform is far below double precision
        live = np.flatnonzero(flat < 1500.0)
        for lo in range(0, live.size, 512):
            idx = live[lo:lo + 512]
            out[idx] = np.cos(2.0 * np.pi * np.outer(flat[idx], u)) @ w
        return out.reshape(s.shape)

    def hat(self, s):
        return self.psi_hat(s) ** 2


_MOLLIFIER = None


def mollifier():
    global _MOLLIFIER
    if _MOLLIFIER is None:
        _MOLLIFIER = _Mollifier()
    return _MOLLIFIER


def _cos_map_nodes(lo, hi, n):
    """Nodes/weights on [lo, hi] (rowwise) clustered at both ends.

    z = lo + (hi - lo) (1 - cos(pi u)) / 2 turns square-root end behaviour
    into an analytic integrand in u; Gauss-Legendre in u.
    """
    u, w = gauss_legendre(n, 0.0, 1.0)
    span = (hi - lo)[..., None]
    z = lo[..., None] + span * 0.5 * (1.0 - np.cos(np.pi * u))
    wz = span * 0.5 * np.pi * np.sin(np.pi * u) * w
    return z, wz


class Mollified(CompactFunction):
    """F^eps = B_{1-eps} * phi_eps with B_s(x) = B(x/s)/s, phi_eps(x) = phi(x/eps)/eps.

    The transform is evaluated as H(B)_{1-eps} * phi_eps, i.e.
    H(F^eps)(x) = int phi(z) H(B)((x - eps z)/(1 - eps)) / (1 - eps) dz,
    split where the argument crosses a singular point of H(B).
    """

    TABLE_SIZE = 16385

    def __init__(self, base, epsilon, nodes=96):
        if not 0.0 < epsilon < 1.0:
            raise InvalidArgument("epsilon must lie in (0, 1)")
        self.base = base
        self.eps = float(epsilon)
        self.nodes = int(nodes)
        self.name = f"mollified:{epsilon:g}"
        self.parity = base.parity
        self.nonnegative = base.nonnegative
        self.continuous = True
        self.radial_decreasing = base.radial_decreasing
        # F^eps is smooth; only the support ends matter for quadrature cuts
        self.singular_points = (-0.5, 0.5)
        self.length_scale = 0.1 * self.eps
        self.hilbert_singular = ()
        self._phi = mollifier()

    @property
    def mass(self):
        return self.base.mass

    def _l1(self):
        return self.base.l1_norm

    def _convolve(self, x, g):
        """int phi(z) g((x - eps z) / (1 - eps)) dz / (1 - eps), normalised by int phi."""
        s = 1.0 - self.eps
        cuts = [(x - s * p) / self.eps for p in self.base.singular_points]
        edges = np.column_stack([np.full_like(x, -0.5), *cuts, np.full_like(x, 0.5)])
        edges = np.sort(np.clip(edges, -0.5, 0.5), axis=1)
        num = np.zeros_like(x)
        den = np.zeros_like(x)
        for j in range(edges.shape[1] - 1):
            z, w = _cos_map_nodes(edges[:, j], edges[:, j + 1], self.nodes)
            pw = w * self._phi(z)
            gv = g((x[:, None] - self.eps * z) / s)
            # zero-length pieces put nodes on a cut, where g may be infinite
            with np.errstate(invalid="ignore"):
                num += np.where(pw > 0.0, pw * gv, 0.0).sum(axis=1)
            den += pw.sum(axis=1)
        return num / (den * s)

    @cached_property
    def _table(self):
        x = np.linspace(-0.5, 0.5, self.TABLE_SIZE)
        return CubicSpline(x, self.value_direct(x))

    def value_direct(self, x):
        """F^eps by direct convolution (the spline table is built from this)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return self._convolve(x, lambda y: self.base(y))

    def _value(self, x):
        # point values are hit many thousand times by quadrature oracles
        return self._table(x)

    def _hat(self, t):
        return self.base.hat((1.0 - self.eps) * t) * self._phi.hat(self.eps * t)

    def _hilbert(self, x):
        return self._convolve(x, self.base._hilbert)


def parse_function(spec, base_dir=None):
    """Build a function from a CLI tag: triangle, magicF, magicG, chebyshev,
    outlier, mollified:EPS or polyline:FILE."""
    tag, _, arg = spec.partition(":")
    key = tag.lower()
    if key == "triangle":
        return Triangle()
    if key == "outlier":
        return Outlier()
    if key == "magicf":
        return MagicF()
    if key == "magicg":
        return MagicG()
    if key == "chebyshev":
        return ChebyshevWeight()
    if key == "mollified":
        eps = float(arg) if arg else 0.1
        return Mollified(MagicF(), eps)
    if key == "polyline":
        path = arg if base_dir is None else os.path.join(base_dir, arg)
        with open(path) as fh:
            return PiecewiseLinear.from_json(json.load(fh), name=os.path.basename(arg))
    raise InvalidArgument(f"unknown function tag {spec!r}")


def unit_mass(F):
    """Scale factor making ||F||_1 = 1 (closed-form tags are already normalised)."""
    n = F.l1_norm
    if not n > 0 or not math.isfinite(n):
        raise InvalidArgument("function has no finite positive L1 norm")
    return 1.0 / n

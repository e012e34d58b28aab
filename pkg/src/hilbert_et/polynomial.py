"""Monic complex polynomials, their roots, and the radial projection of roots.

Coefficients are stored in ascending order ``a_0 ... a_{N-1}``; the leading
coefficient 1 is implicit.  A polynomial built from its roots keeps them
(factored form).  For factored polynomials the roots are authoritative:
expanded coefficients of e.g. (z-1)^100 are not representable in double
precision, so evaluation and root queries go through the factors.
"""

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import InvalidArgument, SolverFailure

TWO_PI = 2.0 * np.pi
_EPS = np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class RootSet:
    """Roots alpha_j = rho_j * exp(2 pi i theta_j), theta_j in [0, 1)."""

    rho: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=float).ravel()
        theta = normalize_angles(np.asarray(self.theta, dtype=float).ravel())
        if rho.shape != theta.shape or rho.size == 0:
            raise InvalidArgument("rho and theta must be non-empty and of equal length")
        if not np.all(rho > 0):
            raise InvalidArgument("all root moduli must be positive (P(0) != 0)")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "theta", theta)

    @property
    def degree(self):
        return self.rho.size

    @property
    def values(self):
        return self.rho * np.exp(TWO_PI * 1j * self.theta)

    @classmethod
    def from_complex(cls, z):
        z = np.asarray(z, dtype=complex)
        return cls(np.abs(z), np.angle(z) / TWO_PI)

    def multiplicities(self, atol=1e-12):
        """List of (rho, theta, count) for coincident roots."""
        out = []
        order = np.lexsort((self.rho, self.theta))
        for r, t in zip(self.rho[order], self.theta[order]):
            if out and abs(out[-1][0] - r) <= atol and abs(out[-1][1] - t) <= atol:
                out[-1][2] += 1
            else:
                out.append([r, t, 1])
        return [tuple(x) for x in out]


def normalize_angles(theta):
    theta = np.mod(theta, 1.0)
    # mod of a tiny negative number rounds to exactly 1.0
    theta[theta >= 1.0] = 0.0
    return theta


@dataclass(frozen=True, eq=False)
class ComplexPolynomial:
    coefficients: np.ndarray
    roots: Optional[RootSet] = None

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex).ravel()
        if c.size < 1:
            raise InvalidArgument("degree must be at least 1")
        if c[0] == 0:
            raise InvalidArgument("P(0) = a_0 must be non-zero")
        object.__setattr__(self, "coefficients", c)
        if self.roots is not None and self.roots.degree != c.size:
            raise InvalidArgument("root count does not match degree")

    @property
    def degree(self):
        return self.coefficients.size

    @property
    def full_coefficients(self):
        """Ascending coefficients including the leading 1."""
        return np.append(self.coefficients, 1.0 + 0.0j)

    @property
    def log_abs_a0(self):
        if self.roots is not None:
            return float(np.sum(np.log(self.roots.rho)))
        return float(np.log(abs(self.coefficients[0])))

    @property
    def is_real(self):
        return bool(np.all(np.abs(self.coefficients.imag) <= 1e-12 * (1 + np.abs(self.coefficients.real))))

    @classmethod
    def from_roots(cls, roots):
        return expand_from_roots(roots)

    def log_abs_on_circle(self, theta):
        """log|P(e^{2 pi i theta})| evaluated stably (vectorised)."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if self.roots is not None:
            return kernels.log_abs_factored(theta.ravel(), self.roots.rho, self.roots.theta).reshape(theta.shape)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(evaluate_on_circle(self, theta)))

    def to_json(self):
        if self.roots is not None:
            body = {"roots": [{"rho": float(r), "theta": float(t)} for r, t in zip(self.roots.rho, self.roots.theta)]}
        else:
            body = {"coefficients": [[float(c.real), float(c.imag)] for c in self.coefficients]}
        return {"schema": "hilbert-et/1", **body}


def evaluate_on_circle(p, theta):
    """P(e^{2 pi i theta}); Horner on the coefficients, or the factor product."""
    theta = np.asarray(theta, dtype=float)
    z = np.exp(TWO_PI * 1j * theta)
    if p.roots is not None:
        return np.prod(z[..., None] - p.roots.values, axis=-1)
    acc = np.ones_like(z)
    for c in p.coefficients[::-1]:
        acc = acc * z + c
    return acc


def expand_from_roots(roots):
    """Monic polynomial with the given roots, by sequential multiplication."""
    c = np.array([1.0 + 0.0j])  # ascending, includes leading term
    for a in roots.values:
        nxt = np.zeros(c.size + 1, dtype=complex)
        nxt[1:] += c
        nxt[:-1] -= a * c
        c = nxt
    return ComplexPolynomial(c[:-1], roots=roots)


def _taylor_coefficients(coeffs, c):
    """q_j = P^{(j)}(c)/j! and a rounding-error bound for each (ascending)."""
    q = np.array(coeffs, dtype=complex)
    bound = np.abs(q).astype(float)
    n = q.size - 1
    ac = abs(c)
    for i in range(n):
        for k in range(n - 1, i - 1, -1):
            q[k] += c * q[k + 1]
            bound[k] += ac * bound[k + 1]
    return q, bound


def _refine_center(coeffs, c, m, maxiter=60):
    """Newton on P^{(m-1)}, where an m-fold root of P is a simple root."""
    d = np.polynomial.polynomial.polyder(coeffs, m - 1)
    dd = np.polynomial.polynomial.polyder(d)
    for _ in range(maxiter):
        f = np.polynomial.polynomial.polyval(c, d)
        fp = np.polynomial.polynomial.polyval(c, dd)
        if fp == 0:
            break
        step = f / fp
        c = c - step
        if abs(step) <= 4 * _EPS * max(abs(c), 1.0):
            break
    return c


def _cluster_multiple_roots(z, coeffs, min_radius=1e-6):
    """Replace numerically-multiple root clusters by one repeated centre.

    Candidate clusters are built by single linkage at radii growing from
    ``min_radius``.  A cluster of m roots with centroid c is accepted as an
    m-fold root when, after refining c by Newton on P^{(m-1)}, the Taylor
    coefficients P^{(j)}(c)/j!, j < m, all vanish to within their own
    rounding-error bound.  A larger accepted cluster overrides the smaller
    ones it contains (pieces of a triple root also pass the test).
    """
    n = z.size
    out = z.copy()
    dist = np.abs(z[:, None] - z[None, :])
    for radius in min_radius * 4.0 ** np.arange(0, 12):
        label = np.arange(n)
        for i in range(n):
            for j in np.flatnonzero(dist[i] <= radius):
                a, b = label[i], label[j]
                if a != b:
                    label[label == max(a, b)] = min(a, b)
        for lab in np.unique(label):
            members = np.flatnonzero(label == lab)
            m = members.size
            if m < 2:
                continue
            c = _refine_center(coeffs, z[members].mean(), m)
            q, bound = _taylor_coefficients(coeffs, c)
            noise = 8.0 * coeffs.size * _EPS * bound[:m]
            if np.all(np.abs(q[:m]) <= noise):
                out[members] = c
        if np.unique(label).size == 1:
            break
    return out


def find_roots(p, tolerance=1e-12, maxiter=2000):
    """All N roots of p as a RootSet (Aberth-Ehrlich + multiplicity clustering).

    Factored polynomials return their stored roots.  Convergence is judged by
    the relative backward error |P(z)| / sum |a_k| |z|^k; ``tolerance`` is a
    floor for that test (the effective threshold is never below rounding
    level ``4 N eps``).
    """
    if not tolerance > 0:
        raise InvalidArgument("tolerance must be positive")
    if p.roots is not None:
        return p.roots
    coeffs = p.full_coefficients
    n = p.degree
    # geometric mean of the root moduli is |a_0|^(1/N); offset breaks symmetry
    r0 = abs(coeffs[0]) ** (1.0 / n)
    z0 = r0 * np.exp(1j * (TWO_PI * np.arange(n) / n + 0.4))
    tol = max(tolerance, 4.0 * n * _EPS)
    z, done, iters = kernels.aberth(coeffs, z0.astype(complex), maxiter, 4.0 * n * _EPS)
    scale = np.abs(np.polynomial.polynomial.polyval(np.abs(z), np.abs(coeffs)))
    resid = np.abs(np.polynomial.polynomial.polyval(z, coeffs)) / scale
    if not np.all(np.isfinite(z)) or np.max(resid) > max(tol, 1e3 * n * _EPS):
        raise SolverFailure(
            "Aberth iteration did not converge",
            iterations=int(iters),
            max_backward_error=float(np.max(resid)),
            unconverged=int(np.sum(~done)),
        )
    z = _cluster_multiple_roots(z, coeffs)
    return RootSet.from_complex(z)


def schur_project(roots):
    """Move every root radially onto the unit circle; angles unchanged."""
    return RootSet(np.ones_like(roots.rho), roots.theta.copy())


def load_polynomial(path_or_obj):
    """Read a polynomial from JSON (path, string or parsed dict).

    Accepted shapes: ``{"coefficients": [[re, im], ...]}`` (ascending, the
    leading 1 omitted) or ``{"roots": [{"rho": r, "theta": t}, ...]}``.
    """
    obj = path_or_obj
    if isinstance(obj, str):
        if obj.lstrip().startswith("{"):
            obj = json.loads(obj)
        else:
            with open(obj) as fh:
                obj = json.load(fh)
    if "roots" in obj:
        rho = [float(r.get("rho", 1.0)) for r in obj["roots"]]
        theta = [float(r["theta"]) for r in obj["roots"]]
        return expand_from_roots(RootSet(np.array(rho), np.array(theta)))
    if "coefficients" in obj:
        coeffs = []
        for c in obj["coefficients"]:
            if isinstance(c, (list, tuple)):
                coeffs.append(complex(float(c[0]), float(c[1]) if len(c) > 1 else 0.0))
            else:
                coeffs.append(complex(float(c), 0.0))
        return ComplexPolynomial(np.array(coeffs))
    raise InvalidArgument("polynomial JSON needs a 'coefficients' or 'roots' key")

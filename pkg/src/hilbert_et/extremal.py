"""The extremal-problem layer built on the Hilbert engine.

C(F) = max(||H(F)||_inf on R, ||H(f_F)||_inf on R/Z) / ||F||_1, the
delta-sweep of delta ||H(f_delta)||_inf, the majorant quantity G_delta, the
choice of delta, and the duality / annihilation certificates.
"""

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import kernels
from .constants import table
from .discrepancy import CircleInterval
from .errors import InvalidArgument, NumericFailure
from .hilbert import (
    ChebyshevWeight,
    MagicF,
    Mollified,
    PeriodizedFunction,
    PiecewiseLinear,
    circle_grid,
    hilbert_line_pv_quadrature,
    hilbert_periodic,
    hilbert_periodic_exact,
    line_grid,
)
from .hilbert.transforms import DEFAULT_K, _refine_abs, _safe_scalar, effective_K
from .numerics import quad_split

TIE_TOL = 1e-6
SWEEP_DELTAS = (0.01, 0.05) + tuple(round(0.05 * j, 2) for j in range(2, 21))
PATH_DELTAS = (0.01, 0.005)


@dataclass
class ExtremalReport:
    norm_line: float
    norm_circle: float
    c_of_F: float
    argmax_line: float
    argmax_circle: float
    dichotomy: str  # "line-dominant", "circle-dominant" or "tie-within-tolerance"
    passes_threshold: bool
    l1_norm: float = 1.0
    metadata: dict = field(default_factory=dict)

    def as_dict(self):
        return asdict(self)


@dataclass
class DeltaSweep:
    deltas: list
    values: list
    sup: float
    sup_delta: float
    endpoint_line: float
    endpoint_circle: float
    path: list = field(default_factory=list)  # (delta, delta H(f_delta)(delta x0))
    predicted_endpoint: str = ""
    endpoint_gap: float = float("nan")

    def as_dict(self):
        return asdict(self)


def _require_class_a(F):
    if not F.class_a:
        raise InvalidArgument(f"{F.name} is not in class A (even, continuous, non-negative)")


def _circle_sup(F, delta, grid, K):
    return circle_grid(PeriodizedFunction(F, delta), grid=grid, K=K)


def c_functional(F, grid=2048, K=DEFAULT_K, tie_tol=TIE_TOL):
    """Both sup norms of H(F) (line and delta = 1 circle), normalised by ||F||_1."""
    _require_class_a(F)
    scale = 1.0 / F.l1_norm
    line = line_grid(F, grid)
    circ = _circle_sup(F, 1.0, grid, K)
    nl = line.sup_norm * scale
    nc = circ.sup_norm * scale
    if abs(nl - nc) < tie_tol:
        kind = "tie-within-tolerance"
    elif nl > nc:
        kind = "line-dominant"
    else:
        kind = "circle-dominant"
    if F.radial_decreasing and kind == "circle-dominant":
        raise NumericFailure("radial-decreasing function came out circle-dominant",
                             norm_line=nl, norm_circle=nc, function=F.name)
    c = max(nl, nc)
    return ExtremalReport(
        norm_line=nl,
        norm_circle=nc,
        c_of_F=c,
        argmax_line=abs(line.argmax),
        argmax_circle=circ.argmax,
        dichotomy=kind,
        passes_threshold=bool(c <= table().c_threshold),
        l1_norm=F.l1_norm,
        metadata={"circle_method": circ.metadata.get("method"), "circle_K": circ.truncation_K,
                  "circle_tail_estimate": circ.tail_estimate},
    )


def _periodic_value(F, delta, theta, K):
    pf = PeriodizedFunction(F, delta)
    if isinstance(F, PiecewiseLinear):
        return float(hilbert_periodic_exact(pf, theta))
    return float(hilbert_periodic(pf, theta, K=K))


def delta_sweep(F, deltas=SWEEP_DELTAS, grid=2048, K=DEFAULT_K, report=None):
    """delta ||H(f_delta)||_inf over ``deltas`` plus the delta -> 0 path values.

    The path values delta H(f_delta)(delta x0), x0 the line argmax, evidence
    the delta -> 0+ endpoint.  ``endpoint_gap`` is |c(F) - value at the
    predicted endpoint| (path at the smallest delta when line-dominant, the
    delta = 1 value otherwise).
    """
    deltas = sorted({float(d) for d in deltas})
    if not deltas:
        raise InvalidArgument("need at least one delta")
    if deltas[0] <= 0 or deltas[-1] > 1:
        raise InvalidArgument("deltas must lie in (0, 1]")
    _require_class_a(F)
    report = report or c_functional(F, grid=grid, K=K)
    scale = 1.0 / F.l1_norm
    values = [d * _circle_sup(F, d, grid, K).sup_norm * scale for d in deltas]
    if deltas[-1] == 1.0:
        circle_end = values[-1]
    else:
        circle_end = _circle_sup(F, 1.0, grid, K).sup_norm * scale
    x0 = report.argmax_line
    path = []
    for d in PATH_DELTAS:
        if abs(d * x0) < 0.5:
            path.append((d, d * abs(_periodic_value(F, d, d * x0, K)) * scale))
    i = int(np.argmax(values))
    if report.dichotomy == "circle-dominant":
        predicted, gap = "circle", abs(report.c_of_F - circle_end)
    else:
        predicted = "line"
        gap = abs(report.c_of_F - path[-1][1]) if path else float("nan")
    return DeltaSweep(
        deltas=deltas, values=values, sup=float(values[i]), sup_delta=deltas[i],
        endpoint_line=report.norm_line, endpoint_circle=circle_end, path=path,
        predicted_endpoint=predicted, endpoint_gap=gap,
    )


def _widened(interval, delta):
    """[alpha, beta] for I widened by delta/2 on each side, or None if it covers the circle."""
    if interval.length + delta >= 1.0:
        return None
    a = interval.start - 0.5 * delta
    return a, a + interval.length + delta


def _g_delta_coeffs(F, delta, interval, K):
    """(cos, sin) coefficients of the non-constant part of g_delta, or None for the full circle."""
    ends = _widened(interval, delta)
    if ends is None:
        return None
    alpha, beta = ends
    K_eff = effective_K(K, delta)
    k = np.arange(1, K_eff + 1, dtype=float)
    chi = (np.exp(-2j * np.pi * k * alpha) - np.exp(-2j * np.pi * k * beta)) / (2j * np.pi * k)
    ghat = chi * F.hat(delta * k) / F.l1_norm
    c = 2.0 * k * ghat  # coefficient of e^{2 pi i k theta}; k < 0 is the conjugate
    # 2 Re(c e^{i x}) = 2 (Re c cos x - Im c sin x)
    return np.ascontiguousarray(-c.imag), np.ascontiguousarray(c.real)


def _eval_coeffs(coeffs, theta):
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    if coeffs is None:
        return np.zeros(th.shape)
    return kernels.trig_series(np.ascontiguousarray(th), *coeffs)


def g_delta_series(F, delta, interval, theta, K=DEFAULT_K):
    """sum_{k != 0} 2|k| g-hat_delta(k) e^{2 pi i k theta}, straight from the coefficients."""
    return _eval_coeffs(_g_delta_coeffs(F, delta, interval, K), theta)


def g_delta_bound(F, delta, interval, grid=2048, K=DEFAULT_K):
    """G_delta = max_theta |sum_{k != 0} 2|k| g-hat_delta(k) e^{2 pi i k theta}| for one interval.

    Returns 0 when |I| + delta >= 1: the widened arc is the whole circle, so
    g_delta is constant and all its non-zero coefficients vanish.
    """
    if not 0.0 < delta <= 1.0:
        raise InvalidArgument("delta must lie in (0, 1]")
    _require_class_a(F)
    coeffs = _g_delta_coeffs(F, delta, interval, K)
    if coeffs is None:
        return 0.0
    x = np.linspace(-0.5, 0.5, int(grid) + 1)
    y = _eval_coeffs(coeffs, x)
    fun = lambda t: _safe_scalar(lambda s: _eval_coeffs(coeffs, s), t)
    _, best = _refine_abs(fun, x, y)
    return float(best)


@dataclass
class OptimalDelta:
    delta: float
    unclamped: float
    clamped: bool
    degenerate: bool


def optimal_delta(F, N, h):
    """delta = sqrt(4 C h / (pi N)) minimising the bound C' N h / delta + N delta.

    ``F`` may be a class-A function (C = c_of_F is computed) or the number C
    itself.  h = 0 gives the smallest positive double, flagged degenerate;
    an unclamped value above 1 is clamped and flagged.
    """
    if N < 1 or h < 0:
        raise InvalidArgument("need N >= 1 and h >= 0")
    c = float(F) if isinstance(F, (int, float)) else c_functional(F).c_of_F
    if h == 0:
        return OptimalDelta(delta=np.finfo(float).tiny, unclamped=0.0, clamped=False, degenerate=True)
    raw = math.sqrt(4.0 * c * h / (math.pi * N))
    return OptimalDelta(delta=min(raw, 1.0), unclamped=raw, clamped=raw > 1.0, degenerate=False)


def duality_lower_bound(F, split=1e-4, tolerance=1e-10):
    """int_{-1/2}^{1/2} H(F)(x) G(x) dx with G(x) = 2x / sqrt(1 - 4x^2).

    The pairing equals int F = 1 for unit-mass F.  On |x| > 1/2 - split the
    substitution u = sqrt(1 - 4x^2) turns G dx into -du/2, removing the
    inverse-square-root blow-up.
    """
    if not F.class_a_star:
        raise InvalidArgument("duality bound needs a non-negative function")
    scale = 1.0 / F.l1_norm
    H = lambda x: _safe_scalar(F.hilbert, x)
    G = lambda x: 2.0 * x / math.sqrt(1.0 - 4.0 * x * x)
    edge = 0.5 - split
    pts = [p for p in F.singular_points if -edge < p < edge]
    mid, _ = quad_split(lambda x: H(x) * G(x), -edge, edge, points=pts, epsabs=tolerance, epsrel=1e-12)
    us = math.sqrt(1.0 - 4.0 * edge * edge)
    right, _ = quad_split(lambda u: 0.5 * H(0.5 * math.sqrt(1.0 - u * u)), 0.0, us, epsabs=tolerance)
    left, _ = quad_split(lambda u: -0.5 * H(-0.5 * math.sqrt(1.0 - u * u)), 0.0, us, epsabs=tolerance)
    return (mid + right + left) * scale


def tricomi_annihilation_check(grid=101, depth=4, eps0=1e-2):
    """max over |x| <= 0.45 of |H((1 - 4x^2)^(-1/2))(x)| by the PV quadrature oracle.

    ``depth`` is the number of window sizes eps0 2^{-j} fed to the
    extrapolation; more levels remove more terms of the eps-expansion.
    """
    if grid < 101:
        raise InvalidArgument("grid must be at least 101")
    if depth < 2:
        raise InvalidArgument("depth must be at least 2")
    W = ChebyshevWeight()
    sched = eps0 * 0.5 ** np.arange(depth)
    worst = 0.0
    for x in np.linspace(-0.45, 0.45, int(grid)):
        v = hilbert_line_pv_quadrature(W, x, epsilon_schedule=sched, tolerance=np.inf)
        worst = max(worst, abs(v))
    return worst


def case2_kernel_check(n_theta=25, n_beta=25, x_max=50.0, n_x=400):
    """Spot-check of the Case-2 kernel used for delta in (0, 1):

    h(x) = 4t (t^2 - b^2 - x^2) / (((t - b)^2 - x^2)((t + b)^2 - x^2))
    for -1/2 < t < 0, 0 <= b <= 1/2 is positive and decreasing on x >= 1.
    Returns (min h, max h') over the sample; the claim holds when
    min h > 0 and max h' < 0.  Not load-bearing for any other computation.
    """
    t = np.linspace(-0.49, -0.01, n_theta)[:, None, None]
    b = np.linspace(0.0, 0.5, n_beta)[None, :, None]
    x = np.linspace(1.0, x_max, n_x)[None, None, :]
    num = 4 * t * (t * t - b * b - x * x)
    den = ((t - b) ** 2 - x * x) * ((t + b) ** 2 - x * x)
    dnum = -8 * t * x
    dden = -2 * x * ((t + b) ** 2 - x * x) - 2 * x * ((t - b) ** 2 - x * x)
    deriv = (dnum * den - num * dden) / den ** 2
    return float((num / den).min()), float(deriv.max())


def mollified_family(epsilons=(0.2, 0.1, 0.05), grid=2048, K=DEFAULT_K):
    """c_of_F(F^eps) for the mollified magic function, with the target 1/(1-eps)."""
    out = []
    for e in epsilons:
        rep = c_functional(Mollified(MagicF(), e), grid=grid, K=K)
        out.append({"epsilon": e, "c_of_F": rep.c_of_F, "target": 1.0 / (1.0 - e), "report": rep})
    return out


def certify(grid=2048, K=DEFAULT_K, epsilons=(0.2, 0.1, 0.05), tol=1e-3):
    """Duality >= 1 for MagicF and the mollified family, and c_of_F(F^eps) -> 1.

    Returns (ok, details).
    """
    details = {}
    ok = True
    d = duality_lower_bound(MagicF())
    details["duality_magicF"] = d
    ok &= abs(d - 1.0) <= 1e-5
    fam = mollified_family(epsilons, grid, K)
    prev = math.inf
    rows = []
    for row in fam:
        c = row["c_of_F"]
        good = abs(c - row["target"]) <= tol and c < prev and c >= 1.0 - 1e-4
        prev = c
        dual = duality_lower_bound(Mollified(MagicF(), row["epsilon"]))
        good &= abs(dual - 1.0) <= 1e-5 and row["report"].norm_line >= dual - 1e-4
        rows.append({"epsilon": row["epsilon"], "c_of_F": c, "target": row["target"], "duality": dual,
                     "ok": bool(good)})
        ok &= good
    details["mollified"] = rows
    return bool(ok), details

"""Angular discrepancy of root angles and the bound reports built on it.

For a multiset of N angles on R/Z, D = sup over arcs I of |N(I) - |I| N|.
The excess side sup (N(I) - |I| N) is approached by closed arcs whose ends
are data points; the deficit side sup (|I| N - N(I)) by open arcs between
data points.  Both are scanned exactly over ordered index pairs of the
sorted angles.  On the circle the two sides coincide (the complement of an
open arc is a closed arc), which the tests use as an identity check.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .constants import table
from .errors import InvalidArgument, NumericFailure
from .heights import height_H, height_h
from .polynomial import find_roots

_MAX_N = 10_000


@dataclass(frozen=True)
class CircleInterval:
    start: float
    length: float

    def __post_init__(self):
        if not 0.0 <= self.length <= 1.0:
            raise InvalidArgument("arc length must lie in [0, 1]")
        object.__setattr__(self, "start", float(self.start) % 1.0)

    @property
    def end(self):
        return (self.start + self.length) % 1.0

    def as_dict(self):
        return {"start": self.start, "length": self.length}


@dataclass(frozen=True)
class DiscrepancyResult:
    value: float
    witness: CircleInterval
    side: str  # "excess" or "deficit"
    excess: float = float("nan")
    deficit: float = float("nan")

    def as_dict(self):
        return {
            "value": self.value,
            "witness": self.witness.as_dict(),
            "side": self.side,
            "excess": self.excess,
            "deficit": self.deficit,
        }


@dataclass(frozen=True)
class BoundsReport:
    discrepancy: float
    N: int
    h: float
    H_log: float
    rhs_per_constant: dict = field(default_factory=dict)
    ratio: float = float("nan")
    satisfied: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "discrepancy": self.discrepancy,
            "N": self.N,
            "h": self.h,
            "H_log": self.H_log,
            "rhs_per_constant": dict(self.rhs_per_constant),
            "ratio": self.ratio,
            "satisfied": dict(self.satisfied),
        }


def _sorted_angles(angles):
    a = np.asarray(angles, dtype=float).ravel()
    if a.size == 0:
        raise InvalidArgument("need at least one angle")
    if a.size > _MAX_N:
        raise InvalidArgument(f"at most {_MAX_N} angles (quadratic scan)")
    if not np.all(np.isfinite(a)):
        raise InvalidArgument("angles must be finite")
    a = np.mod(a, 1.0)
    a[a >= 1.0] = 0.0
    return np.sort(a)


def discrepancy_exact(angles):
    """D of the angle multiset, with a witness arc.

    Excess is scanned over closed arcs [t_i, t_j], deficit over open arcs
    (t_i, t_j), each pair in the doubled sorted list.  With repeated angles
    the index difference only under-counts (excess) or over-counts (deficit)
    points, so the maximum over all pairs is still the exact supremum.
    """
    a = _sorted_angles(angles)
    n = a.size
    ex, ei, ej, de, di, dj = kernels.arc_scan(a)
    ext = np.concatenate([a, a + 1.0])
    e_arc = CircleInterval(float(a[ei]), float(min(1.0, ext[ej] - ext[ei])))
    d_arc = CircleInterval(float(a[di]), float(min(1.0, ext[dj] - ext[di])))
    ex = float(ex)
    de = float(de)
    # ties go to the witness with the smaller start angle (excess if equal)
    if ex > de or (ex == de and e_arc.start <= d_arc.start):
        value, arc, side = ex, e_arc, "excess"
    else:
        value, arc, side = de, d_arc, "deficit"
    return DiscrepancyResult(value=min(value, float(n)), witness=arc, side=side, excess=ex, deficit=de)


def discrepancy_grid_oracle(angles, resolution=10_000):
    """Brute-force lower bound for D over arcs with endpoints on a candidate set.

    Candidates: a uniform grid of ``resolution`` cells on [0, 1] plus each
    data angle and its neighbours at +-1e-12.  Every closed and open arc
    [u, v] / (u, v) with u <= v among candidates is tried.
    """
    if resolution < 1000:
        raise InvalidArgument("resolution must be at least 1000")
    a = _sorted_angles(angles)
    cand = np.concatenate([np.linspace(0.0, 1.0, int(resolution) + 1), a, a - 1e-12, a + 1e-12])
    cand = np.unique(np.clip(cand, 0.0, 1.0))
    cnt_le = np.searchsorted(a, cand, side="right").astype(np.float64)
    cnt_lt = np.searchsorted(a, cand, side="left").astype(np.float64)
    return float(kernels.arc_oracle(cand, cnt_le, cnt_lt, float(a.size)))


def bounds_report(p, tolerance=1e-10, grid=2048):
    """Discrepancy of the root angles against C sqrt(N h) for each constant.

    The Erdos-Turan constant 16 multiplies sqrt(N log H), the others
    sqrt(N h).
    """
    roots = find_roots(p)
    n = roots.degree
    disc = discrepancy_exact(roots.theta)
    h = height_h(p, tolerance)
    H_log = height_H(p, grid)
    consts = table()
    rhs = {}
    ok = {}
    for name, c in consts.ladder():
        base = H_log if name == "c_erdos_turan" else h
        rhs[name] = c * math.sqrt(n * max(base, 0.0))
        # relative slack for rounding in D (an integer minus N times a length)
        ok[name] = bool(disc.value <= rhs[name] * (1 + 1e-12) + 1e-9)
    ratio = disc.value / math.sqrt(n * h) if h > 0 else float("inf")
    return BoundsReport(
        discrepancy=disc.value, N=n, h=h, H_log=H_log, rhs_per_constant=rhs, ratio=ratio, satisfied=ok
    )


def real_root_bound(roots, disc, atol=1e-9):
    """(number of roots on the real axis, 2 D); raises if the count exceeds 2 D."""
    t = roots.theta
    real = (np.abs(t) <= atol) | (np.abs(t - 1.0) <= atol) | (np.abs(t - 0.5) <= atol)
    count = int(np.sum(real))
    bound = 2.0 * disc.value
    if count > bound + 1e-9:
        raise NumericFailure("real-root count exceeds 2 D", count=count, bound=bound)
    return count, bound

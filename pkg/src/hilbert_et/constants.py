"""Named constants of the discrepancy problem, computed from their series.

Nothing here is a typed-in decimal except the Erdos-Turan constant 16 and
what follows from pi, sqrt and log.  Catalan's constant and L(2, chi_3) come
from the series summations below; every other entry of :class:`ConstantTable`
is a closed expression in those two numbers.
"""

import json
import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidArgument

_MAX_TERMS = 1 << 24


def _check_tol(tolerance):
    if not tolerance > 0:
        raise InvalidArgument(f"tolerance must be positive, got {tolerance!r}")


def _euler_average(partials, levels):
    """Repeatedly average consecutive partial sums of an alternating series.

    Returns (estimate, error_estimate).  Each level cancels the leading
    oscillating term of the remainder, which is what Richardson extrapolation
    does for an error of the form (-1)^M c / M^p.
    """
    row = np.asarray(partials, dtype=float)
    prev = row[-1]
    for _ in range(levels):
        prev = row[-1]
        row = 0.5 * (row[1:] + row[:-1])
    return float(row[-1]), abs(float(row[-1]) - float(prev))


def compute_catalan(tolerance=1e-13):
    """Catalan's constant 1 - 1/3^2 + 1/5^2 - ...

    Method: direct alternating summation up to M terms (summed smallest term
    first), then six levels of averaging of the partial sums S_M ... S_{M+6}.
    M is doubled until the change produced by the last averaging level is
    below ``tolerance / 10``.
    """
    _check_tol(tolerance)
    levels = 6
    M = 32
    while True:
        n = np.arange(M + levels + 1, dtype=float)
        terms = (-1.0) ** n / (2.0 * n + 1.0) ** 2
        head = math.fsum(terms[:M][::-1])
        partials = head + np.concatenate([[0.0], np.cumsum(terms[M:M + levels])])
        value, err = _euler_average(partials, levels)
        if err < tolerance / 10 or M >= _MAX_TERMS:
            return value
        M *= 2


def _block_tail_integral(x):
    # integral_x^inf (1/(3u+1)^2 - 1/(3u+2)^2) du
    return 1.0 / (3.0 * (3.0 * x + 1.0) * (3.0 * x + 2.0))


def compute_l2_chi3(tolerance=1e-13):
    """L(2, chi_3) = sum chi_3(n)/n^2 with chi_3 the character mod 3.

    Summed in blocks b_m = 1/(3m+1)^2 - 1/(3m+2)^2, which are positive and
    decreasing, so the tail after M blocks lies between the integrals of the
    block function from M and from M-1 to infinity.  The midpoint of that
    bracket is returned; M is chosen so the half-width is below tolerance.
    """
    _check_tol(tolerance)
    # half-width ~ 1/(27 M^3)
    M = int(min(_MAX_TERMS, max(16, math.ceil((1.0 / (27.0 * tolerance)) ** (1.0 / 3.0)) + 1)))
    m = np.arange(M, dtype=float)
    blocks = 1.0 / (3.0 * m + 1.0) ** 2 - 1.0 / (3.0 * m + 2.0) ** 2
    head = math.fsum(blocks[::-1])
    lo = _block_tail_integral(M)
    hi = _block_tail_integral(M - 1)
    return head + 0.5 * (lo + hi)


@dataclass(frozen=True)
class ConstantTable:
    catalan: float
    l2_chi3: float
    smyth: float
    c_erdos_turan: float
    c_ganelius: float
    c_sound: float
    c_new: float
    c_lower: float
    c_threshold: float
    c_triangle: float
    c_triangle_discrepancy: float

    def ladder(self):
        """Discrepancy constants from smallest (lower bound) to largest."""
        return [
            ("c_lower", self.c_lower),
            ("c_new", self.c_new),
            ("c_triangle_discrepancy", self.c_triangle_discrepancy),
            ("c_sound", self.c_sound),
            ("c_ganelius", self.c_ganelius),
            ("c_erdos_turan", self.c_erdos_turan),
        ]

    def as_dict(self):
        return asdict(self)

    def to_json(self, digits=15):
        rounded = {k: float(f"{v:.{digits}g}") for k, v in self.as_dict().items()}
        return json.dumps({"schema": "hilbert-et/1", "constants": rounded}, indent=2)


def build_table(catalan, l2):
    sqrt3 = math.sqrt(3.0)
    log_silver = math.log(1.0 + math.sqrt(2.0))
    t = ConstantTable(
        catalan=catalan,
        l2_chi3=l2,
        smyth=3.0 * sqrt3 * l2 / (4.0 * math.pi),
        c_erdos_turan=16.0,
        c_ganelius=math.sqrt(2.0 * math.pi / catalan),
        c_sound=8.0 / math.pi,
        c_new=4.0 / math.sqrt(math.pi),
        c_lower=math.sqrt(4.0 * math.pi / (3.0 * sqrt3 * l2)),
        c_threshold=math.pi ** 2 / (3.0 * sqrt3 * l2),
        c_triangle=4.0 / math.pi * log_silver,
        c_triangle_discrepancy=8.0 / math.pi * math.sqrt(log_silver),
    )
    values = [v for _, v in t.ladder()]
    if not all(a < b for a, b in zip(values, values[1:])):
        raise ArithmeticError(f"constant ladder out of order: {t.ladder()}")
    if not t.c_threshold > t.c_triangle:
        raise ArithmeticError("triangle constant does not pass the threshold")
    return t


@lru_cache(maxsize=8)
def table(tolerance=1e-13):
    """All constants, computed once per tolerance and cached."""
    _check_tol(tolerance)
    return build_table(compute_catalan(tolerance), compute_l2_chi3(tolerance))

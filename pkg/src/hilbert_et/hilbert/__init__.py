"""Hilbert-transform engine for functions supported in [-1/2, 1/2]."""

from .functions import (
    ChebyshevWeight,
    CompactFunction,
    MagicF,
    MagicG,
    Mollified,
    Outlier,
    PiecewiseLinear,
    Triangle,
    mollifier,
    parse_function,
)
from .transforms import (
    DEFAULT_K,
    LEMMA4_K,
    PeriodicInfo,
    PeriodizedFunction,
    TransformGrid,
    circle_grid,
    clausen2,
    cot_expansion_check,
    effective_K,
    fourier_transform_hat,
    hilbert_line,
    hilbert_line_pv_quadrature,
    hilbert_periodic,
    hilbert_periodic_cot_quadrature,
    hilbert_periodic_exact,
    lemma4_rhs,
    line_grid,
)

__all__ = [
    "ChebyshevWeight", "CompactFunction", "MagicF", "MagicG", "Mollified", "Outlier",
    "PiecewiseLinear", "Triangle", "mollifier", "parse_function",
    "DEFAULT_K", "LEMMA4_K", "PeriodicInfo", "PeriodizedFunction", "TransformGrid",
    "circle_grid", "clausen2", "cot_expansion_check", "effective_K", "fourier_transform_hat",
    "hilbert_line", "hilbert_line_pv_quadrature", "hilbert_periodic",
    "hilbert_periodic_cot_quadrature", "hilbert_periodic_exact", "lemma4_rhs", "line_grid",
]

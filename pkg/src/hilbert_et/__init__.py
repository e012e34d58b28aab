"""Hilbert-transform extremal problems and the angular discrepancy of polynomial roots.

Hot loops (root finding, arc scans, trigonometric series) run through numba
when available; set ``HILBERT_ET_NUMBA=0`` for the pure-numpy path.
"""

__version__ = "0.1.0"

from ._accel import backend
from .constants import ConstantTable, table
from .discrepancy import (
    BoundsReport,
    CircleInterval,
    DiscrepancyResult,
    bounds_report,
    discrepancy_exact,
    discrepancy_grid_oracle,
    real_root_bound,
)
from .errors import InvalidArgument, NumericFailure, SingularPoint, SolverFailure
from .extremal import (
    DeltaSweep,
    ExtremalReport,
    c_functional,
    delta_sweep,
    duality_lower_bound,
    g_delta_bound,
    optimal_delta,
    tricomi_annihilation_check,
)
from .families import generate_family
from .heights import HeightReport, height_H, height_h, height_logM, height_report, jensen_integral
from .polynomial import ComplexPolynomial, RootSet, expand_from_roots, find_roots, schur_project

__all__ = [
    "__version__", "backend", "ConstantTable", "table",
    "BoundsReport", "CircleInterval", "DiscrepancyResult", "bounds_report", "discrepancy_exact",
    "discrepancy_grid_oracle", "real_root_bound",
    "InvalidArgument", "NumericFailure", "SingularPoint", "SolverFailure",
    "DeltaSweep", "ExtremalReport", "c_functional", "delta_sweep", "duality_lower_bound",
    "g_delta_bound", "optimal_delta", "tricomi_annihilation_check",
    "generate_family",
    "HeightReport", "height_H", "height_h", "height_logM", "height_report", "jensen_integral",
    "ComplexPolynomial", "RootSet", "expand_from_roots", "find_roots", "schur_project",
]

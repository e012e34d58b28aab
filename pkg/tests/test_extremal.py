import math

import numpy as np
import pytest

from hilbert_et import table
from hilbert_et.discrepancy import CircleInterval
from hilbert_et.errors import InvalidArgument
from hilbert_et.extremal import (
    c_functional,
    case2_kernel_check,
    certify,
    delta_sweep,
    duality_lower_bound,
    g_delta_bound,
    g_delta_series,
    mollified_family,
    optimal_delta,
    tricomi_annihilation_check,
)
from hilbert_et.families import random_class_a_polyline
from hilbert_et.hilbert import (
    MagicF,
    MagicG,
    Mollified,
    Outlier,
    PeriodizedFunction,
    PiecewiseLinear,
    Triangle,
    circle_grid,
)

C_TRIANGLE = 4 / math.pi * math.log(1 + math.sqrt(2))


@pytest.fixture(scope="module")
def triangle_report():
    return c_functional(Triangle())


@pytest.fixture(scope="module")
def outlier_report():
    return c_functional(Outlier())


def test_triangle_report(triangle_report):
    r = triangle_report
    assert r.c_of_F == pytest.approx(C_TRIANGLE, abs=1e-8)
    assert r.argmax_line == pytest.approx(1 / (2 * math.sqrt(2)), abs=1e-6)
    assert r.dichotomy == "line-dominant"
    assert r.passes_threshold
    assert r.c_of_F == max(r.norm_line, r.norm_circle)


def test_outlier_is_circle_dominant(outlier_report):
    assert outlier_report.dichotomy == "circle-dominant"
    assert outlier_report.norm_circle > outlier_report.norm_line + 1e-3


def test_scaling_is_normalised():
    T = Triangle()
    pts = list(zip(T.x.tolist(), (3.0 * T.v).tolist()))
    r = c_functional(PiecewiseLinear(pts))
    assert r.c_of_F == pytest.approx(C_TRIANGLE, abs=1e-8)


def test_class_a_required():
    with pytest.raises(InvalidArgument):
        c_functional(MagicG())
    with pytest.raises(InvalidArgument):
        c_functional(MagicF())


def test_c_functional_floor_on_random_polylines():
    rng = np.random.default_rng(7)
    for _ in range(5):
        F = random_class_a_polyline(rng)
        r = c_functional(F, grid=512)
        assert r.c_of_F >= 1 - 1e-4
        if F.radial_decreasing:
            assert r.dichotomy != "circle-dominant"


@pytest.mark.slow
def test_mollified_family_targets():
    rows = mollified_family()
    cs = [row["c_of_F"] for row in rows]
    for row in rows:
        assert abs(row["c_of_F"] - row["target"]) <= 1e-3
        assert row["report"].dichotomy == "line-dominant"
    assert cs[0] > cs[1] > cs[2] >= 1 - 1e-4


# -- delta sweep -------------------------------------------------------------------

def test_sweep_triangle(triangle_report):
    s = delta_sweep(Triangle(), report=triangle_report)
    assert s.values[-1] == s.endpoint_circle
    assert s.endpoint_circle == pytest.approx(triangle_report.norm_circle, abs=1e-12)
    assert s.sup <= triangle_report.c_of_F + 1e-3
    assert s.predicted_endpoint == "line"
    assert s.endpoint_gap <= 1e-3
    # values increase toward the delta -> 0 end
    assert s.values[0] > s.values[-1]


def test_sweep_outlier(outlier_report):
    s = delta_sweep(Outlier(), report=outlier_report)
    assert s.sup_delta == 1.0
    assert s.sup == pytest.approx(outlier_report.c_of_F, abs=1e-3)
    assert s.predicted_endpoint == "circle"
    assert s.endpoint_gap <= 1e-3


def test_sweep_arguments():
    with pytest.raises(InvalidArgument):
        delta_sweep(Triangle(), deltas=[])
    with pytest.raises(InvalidArgument):
        delta_sweep(Triangle(), deltas=[0.0, 0.5])
    with pytest.raises(InvalidArgument):
        delta_sweep(Triangle(), deltas=[0.5, 1.2])


# -- majorant quantity -------------------------------------------------------------

def test_g_delta_full_circle_is_zero():
    assert g_delta_bound(Triangle(), 0.5, CircleInterval(0.1, 0.6)) == 0.0
    assert np.all(g_delta_series(Triangle(), 1.0, CircleInterval(0.0, 0.0), [0.1, 0.3]) == 0.0)


def test_g_delta_inequality_example():
    norm = circle_grid(PeriodizedFunction(Triangle(), 0.5)).sup_norm
    g = g_delta_bound(Triangle(), 0.5, CircleInterval(0.0, 0.25))
    assert 0.0 < g <= 2 / math.pi * norm + 1e-6


def test_g_delta_near_equality_over_intervals():
    T = Triangle()
    norm = circle_grid(PeriodizedFunction(T, 0.5)).sup_norm
    rng = np.random.default_rng(0)
    vals = [g_delta_bound(T, 0.5, CircleInterval(a, l))
            for a, l in zip(rng.uniform(0, 1, 64), rng.uniform(0, 0.5, 64))]
    assert max(vals) <= 2 / math.pi * norm + 1e-6
    assert max(vals) >= 2 / math.pi * norm - 1e-2


def test_g_delta_series_is_rotation_covariant():
    T = Triangle()
    th = np.linspace(-0.5, 0.5, 33)
    a = g_delta_series(T, 0.3, CircleInterval(0.1, 0.2), th)
    b = g_delta_series(T, 0.3, CircleInterval(0.35, 0.2), th + 0.25)
    assert np.allclose(a, b, atol=1e-10)


def test_g_delta_bound_arguments():
    with pytest.raises(InvalidArgument):
        g_delta_bound(Triangle(), 0.0, CircleInterval(0.0, 0.1))


# -- choice of delta -----------------------------------------------------------------

def test_optimal_delta_examples():
    t = table()
    d = optimal_delta(t.c_triangle, 100, 100 * 0.32307)
    assert d.delta == pytest.approx(math.sqrt(4 * 1.12219 * 0.32307 / math.pi), abs=1e-4)
    assert d.delta == pytest.approx(0.6795, abs=1e-4)
    assert not d.clamped
    assert optimal_delta(t.c_threshold, 100, 100 * t.smyth).delta == pytest.approx(1.0, abs=1e-12)
    z = optimal_delta(Triangle(), 10, 0.0)
    assert z.degenerate and 0.0 < z.delta < 1e-300


def test_optimal_delta_clamps():
    d = optimal_delta(2.0, 1, 50.0)
    assert d.clamped and d.delta == 1.0 and d.unclamped > 1.0
    with pytest.raises(InvalidArgument):
        optimal_delta(2.0, 0, 1.0)
    with pytest.raises(InvalidArgument):
        optimal_delta(2.0, 5, -1.0)


# -- certificates ------------------------------------------------------------------------

def test_duality_examples(triangle_report):
    d = duality_lower_bound(Triangle())
    assert d == pytest.approx(1.0, abs=1e-5)
    assert triangle_report.norm_line >= d
    assert duality_lower_bound(MagicF()) == pytest.approx(1.0, abs=1e-5)
    assert duality_lower_bound(Mollified(MagicF(), 0.05)) == pytest.approx(1.0, abs=1e-5)
    with pytest.raises(InvalidArgument):
        duality_lower_bound(MagicG())


def test_duality_random_polylines():
    rng = np.random.default_rng(3)
    for _ in range(5):
        assert duality_lower_bound(random_class_a_polyline(rng)) == pytest.approx(1.0, abs=1e-5)


def test_tricomi():
    worst = tricomi_annihilation_check(grid=101)
    assert worst <= 1e-3
    # depth 2 -> 4 removes two terms of the window expansion; beyond that the
    # quadrature floor (~1e-9) is reached and extra levels must not hurt
    assert worst < 1e-3 * tricomi_annihilation_check(grid=101, depth=2)
    assert tricomi_annihilation_check(grid=101, depth=8) <= worst + 1e-8
    with pytest.raises(InvalidArgument):
        tricomi_annihilation_check(grid=50)


def test_case2_kernel_spot_check():
    hmin, dmax = case2_kernel_check()
    assert hmin > 0 and dmax < 0


@pytest.mark.slow
def test_certify():
    ok, details = certify()
    assert ok
    assert details["duality_magicF"] == pytest.approx(1.0, abs=1e-5)
    assert [row["epsilon"] for row in details["mollified"]] == [0.2, 0.1, 0.05]

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from hilbert_et.errors import InvalidArgument, NumericFailure, SingularPoint
from hilbert_et.families import random_class_a_polyline
from hilbert_et.hilbert import (
    ChebyshevWeight,
    MagicF,
    MagicG,
    Mollified,
    Outlier,
    PeriodizedFunction,
    PiecewiseLinear,
    Triangle,
    circle_grid,
    clausen2,
    cot_expansion_check,
    fourier_transform_hat,
    hilbert_line,
    hilbert_line_pv_quadrature,
    hilbert_periodic,
    hilbert_periodic_cot_quadrature,
    hilbert_periodic_exact,
    lemma4_rhs,
    line_grid,
    parse_function,
)

C_TRIANGLE = 4 / math.pi * math.log(1 + math.sqrt(2))

# mpmath (30 digits): (4/pi)[int_{-1/2}^0 log|x-t| dt - int_0^{1/2} log|x-t| dt]
TRIANGLE_H = {
    0.1: 0.662769486036422192476765931391,
    0.25: 1.04909745769817933399241384636,
    0.4: 1.1057660574986602038444720657,
    0.75: 0.463305078237522069396827285394,
    -0.3: -1.10231531518479055469488552555,
    2.0: 0.160855697779269154061531821149,
    100.0: 0.00318311212488246193554271399932,
}
# mpmath quadrature of 2 int_0^{1/2} F(x) cos(2 pi t x) dx for the magic function
MAGICF_HAT = {0.7: 0.663461678511850062180308414359, 3.3: 0.0941256293488907347213820596152}
# mpmath clsin(2, x)
CLAUSEN = {0.5: 0.848311877703679270993627514818, 1.0: 1.01395913236076850429457433889,
           2.0: 0.727146050863279247429838254608, 3.0: 0.0980262093913014211614297912407}
# mpmath p.v. int_0^{1/2} (f(th - a) - f(th + a)) cot(pi a) da, outlier polyline, delta = 1
OUTLIER_CIRCLE = {0.2: -1.17848661283266349136188402267, 0.05: -0.208194073842419070785112326307,
                  0.45: 1.0264904642005160048732230647}

ALL = [Triangle(), Outlier(), MagicF(), MagicG(), ChebyshevWeight(), Mollified(MagicF(), 0.1)]


# -- functions -----------------------------------------------------------------

def test_class_flags():
    assert Triangle().class_a and Outlier().class_a and Mollified(MagicF(), 0.2).class_a
    assert Triangle().radial_decreasing and not Outlier().radial_decreasing
    assert not MagicG().class_a and MagicG().parity == "odd"
    assert MagicF().class_a_star and not MagicF().continuous
    assert not PiecewiseLinear([(-0.5, 1.0), (0.5, 1.0)]).continuous


@pytest.mark.parametrize("F", ALL, ids=lambda F: F.name)
def test_support_and_parity(F):
    x = np.linspace(0.01, 0.49, 9)
    assert np.all(F(np.array([0.51, -0.7, 3.0])) == 0)
    if F.parity == "even":
        assert np.allclose(F(-x), F(x), rtol=1e-14, atol=1e-14)
    elif F.parity == "odd":
        assert np.allclose(F(-x), -F(x), rtol=1e-14)


def test_polyline_validation():
    with pytest.raises(InvalidArgument):
        PiecewiseLinear([(0.1, 0.0)])
    with pytest.raises(InvalidArgument):
        PiecewiseLinear([(0.2, 0.0), (0.1, 1.0)])
    with pytest.raises(InvalidArgument):
        PiecewiseLinear([(-0.6, 0.0), (0.1, 1.0)])


def test_parse_function_tags(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"breakpoints": [[-0.5, 0], [0, 2], [0.5, 0]]}))
    F = parse_function(f"polyline:{path}")
    assert np.allclose(F.hilbert(np.array([0.25])), Triangle().hilbert(np.array([0.25])))
    assert parse_function("mollified:0.2").eps == 0.2
    assert parse_function("magicG").name == "magicG"
    with pytest.raises(InvalidArgument):
        parse_function("square")


def test_mollified_mass_and_range():
    for eps in (0.2, 0.1, 0.05):
        M = Mollified(MagicF(), eps)
        v, _ = integrate.quad(lambda x: M(np.array([x]))[0], -0.5, 0.5, limit=400, points=[0.0])
        assert v == pytest.approx(1.0, abs=1e-7)
        assert M.hat(np.array([0.0]))[0] == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InvalidArgument):
        Mollified(MagicF(), 1.0)


# -- Fourier transform ----------------------------------------------------------

def test_hat_at_zero_is_mass():
    assert fourier_transform_hat(Triangle(), 0.0) == pytest.approx(1.0, abs=1e-12)
    assert fourier_transform_hat(MagicF(), 0.0) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("t", [0.3, 1.0, 2.5, 7.25, 40.0])
def test_triangle_hat_closed_form(t):
    ref = (math.sin(math.pi * t / 2) / (math.pi * t / 2)) ** 2
    q = fourier_transform_hat(Triangle(), t)
    assert q.real == pytest.approx(ref, abs=1e-10)
    assert abs(q.imag) < 1e-12
    assert Triangle().hat(np.array([t]))[0].real == pytest.approx(ref, abs=1e-13)


@pytest.mark.parametrize("t, ref", MAGICF_HAT.items())
def test_magicF_hat_against_mpmath(t, ref):
    assert MagicF().hat(np.array([t]))[0].real == pytest.approx(ref, abs=1e-12)
    assert fourier_transform_hat(MagicF(), t).real == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("F", ALL, ids=lambda F: F.name)
def test_closed_form_hat_matches_quadrature(F):
    for t in (0.0, 0.4, 1.7, 6.0):
        assert F.hat(np.array([t]))[0] == pytest.approx(fourier_transform_hat(F, t), abs=1e-8)


def test_chebyshev_hat_is_bessel():
    t = np.array([0.5, 2.0, 9.0])
    assert np.allclose(ChebyshevWeight().hat(t).real, 0.5 * np.pi * special.j0(np.pi * t))


def test_hat_tolerance_precondition():
    with pytest.raises(InvalidArgument):
        fourier_transform_hat(Triangle(), 1.0, tolerance=0.0)


# -- line transform ---------------------------------------------------------------

@pytest.mark.parametrize("x, ref", TRIANGLE_H.items())
def test_triangle_transform_against_mpmath(x, ref):
    assert hilbert_line(Triangle(), x) == pytest.approx(ref, abs=1e-13)


def test_triangle_peak():
    x0 = 1 / (2 * math.sqrt(2))
    assert hilbert_line(Triangle(), x0) == pytest.approx(C_TRIANGLE, abs=1e-14)
    g = line_grid(Triangle())
    assert g.sup_norm == pytest.approx(C_TRIANGLE, abs=1e-12)
    assert abs(g.argmax) == pytest.approx(x0, abs=1e-7)
    assert g.sup_norm >= np.max(np.abs(g.values))


def test_magic_closed_forms():
    x_in = np.array([-0.4, -0.1, 0.2, 0.45])
    x_out = np.array([-2.0, -0.7, 0.6, 1.3])
    assert np.allclose(MagicG().hilbert(x_in), -1.0)
    assert np.allclose(MagicG().hilbert(x_out), -1 + 2 * np.abs(x_out) / np.sqrt(4 * x_out ** 2 - 1))
    assert np.allclose(MagicF().hilbert(x_in), np.sign(x_in))
    assert np.allclose(MagicF().hilbert(x_out), 2 / np.pi * np.arcsin(1 / (2 * x_out)))
    assert np.allclose(ChebyshevWeight().hilbert(x_in), 0.0)


def test_singular_point_raises():
    with pytest.raises(SingularPoint):
        MagicG().hilbert(np.array([0.5]))
    with pytest.raises(SingularPoint):
        ChebyshevWeight().hilbert(np.array([-0.5]))


def test_pv_oracle_examples():
    assert hilbert_line_pv_quadrature(Triangle(), 0.25) == pytest.approx(TRIANGLE_H[0.25], abs=1e-5)
    assert hilbert_line_pv_quadrature(MagicG(), 0.2) == pytest.approx(-1.0, abs=1e-4)
    assert hilbert_line_pv_quadrature(ChebyshevWeight(), 0.3) == pytest.approx(0.0, abs=1e-4)


@pytest.mark.parametrize("F", [Triangle(), Outlier(), MagicF(), MagicG(), Mollified(MagicF(), 0.2)],
                         ids=lambda F: F.name)
def test_pv_oracle_matches_closed_forms(F):
    for x in (-1.3, -0.37, 0.013, 0.21, 0.44, 0.83):
        assert hilbert_line_pv_quadrature(F, x, tolerance=1e-5) == pytest.approx(
            hilbert_line(F, x), abs=1e-6)


def test_pv_oracle_schedule_validation():
    with pytest.raises(InvalidArgument):
        hilbert_line_pv_quadrature(Triangle(), 0.2, epsilon_schedule=[1e-3, 2e-3])
    with pytest.raises(InvalidArgument):
        hilbert_line_pv_quadrature(MagicG(), 0.5)


def test_pv_oracle_reports_unsettled_extrapolation():
    with pytest.raises(NumericFailure):
        hilbert_line_pv_quadrature(Triangle(), 0.2, epsilon_schedule=[0.3, 0.2], tolerance=1e-14)


@given(st.floats(0.0, 3.0))
def test_odd_output_closed_forms(x):
    for F in (MagicF(), ChebyshevWeight(), Triangle(), Outlier()):
        if x in F.hilbert_singular or x == 0.5:
            continue
        a, b = F.hilbert(np.array([x, -x]))
        assert a == pytest.approx(-b, abs=1e-10)


@given(st.integers(0, 2**32 - 1), st.floats(0.0, 2.0))
def test_odd_output_random_polylines(seed, x):
    F = random_class_a_polyline(np.random.default_rng(seed))
    a, b = F.hilbert(np.array([x, -x]))
    assert a == pytest.approx(-b, abs=1e-10)


@pytest.mark.parametrize("F", [Triangle(), Outlier(), Mollified(MagicF(), 0.1)], ids=lambda F: F.name)
def test_decay_and_negativity_outside_support(F):
    far = F.hilbert(np.array([-100.0, 100.0]))
    assert np.all(np.abs(far) < 1e-2 * F.l1_norm)
    left = F.hilbert(np.linspace(-5.0, -0.5001, 200))
    assert np.all(left <= 1e-12)


# -- periodic transform ------------------------------------------------------------

def test_periodic_vanishes_at_zero_and_half():
    for F in (Triangle(), Outlier(), Mollified(MagicF(), 0.2)):
        for d in (0.3, 1.0):
            v = hilbert_periodic(PeriodizedFunction(F, d), np.array([0.0, 0.5, -0.5]))
            assert np.allclose(v, 0.0, atol=1e-12)


@pytest.mark.parametrize("F", [Triangle(), Mollified(MagicF(), 0.1)], ids=lambda F: F.name)
@pytest.mark.parametrize("delta", [0.25, 0.6, 1.0])
def test_periodic_nonpositive_left_of_support(F, delta):
    th = np.linspace(-0.5, -delta / 2, 60)
    assert np.all(hilbert_periodic(PeriodizedFunction(F, delta), th) <= 1e-6)


def test_multiplier_vs_cot_oracle_triangle_example():
    pf = PeriodizedFunction(Triangle(), 1.0)
    assert hilbert_periodic(pf, 0.2) == pytest.approx(hilbert_periodic_cot_quadrature(pf, 0.2), abs=1e-4)


@pytest.mark.slow
@pytest.mark.parametrize("F", [Triangle(), Mollified(MagicF(), 0.1)], ids=lambda F: F.name)
@pytest.mark.parametrize("delta", [0.25, 0.5, 1.0])
def test_multiplier_vs_cot_oracle_grid(F, delta):
    pf = PeriodizedFunction(F, delta)
    th = np.linspace(-0.5, 0.5, 101)
    series = hilbert_periodic(pf, th)
    oracle = np.array([hilbert_periodic_cot_quadrature(pf, t, tolerance=1e-5) for t in th])
    assert np.max(np.abs(series - oracle)) <= 1e-4


@pytest.mark.parametrize("theta, ref", OUTLIER_CIRCLE.items())
def test_outlier_circle_against_mpmath(theta, ref):
    pf = PeriodizedFunction(Outlier(), 1.0)
    assert hilbert_periodic_exact(pf, theta) == pytest.approx(ref, abs=1e-12)
    assert hilbert_periodic(pf, theta) == pytest.approx(ref, abs=1e-4)
    assert hilbert_periodic_cot_quadrature(pf, theta) == pytest.approx(ref, abs=1e-7)


@pytest.mark.parametrize("x, ref", CLAUSEN.items())
def test_clausen_against_mpmath(x, ref):
    assert clausen2(x) == pytest.approx(ref, abs=1e-14)
    assert clausen2(-x) == pytest.approx(-ref, abs=1e-14)
    assert clausen2(x + 2 * np.pi) == pytest.approx(ref, abs=1e-13)


@given(st.integers(0, 2**32 - 1), st.floats(0.05, 1.0), st.floats(-0.5, 0.5))
def test_exact_periodic_matches_series(seed, delta, theta):
    F = random_class_a_polyline(np.random.default_rng(seed))
    pf = PeriodizedFunction(F, delta)
    exact = hilbert_periodic_exact(pf, theta)
    series, info = hilbert_periodic(pf, theta, return_info=True)
    # the series converges slowly near kinks (theta log theta behaviour), so it
    # is held to its own tail bound; the cot oracle is the tight second route
    assert abs(exact - series) <= info.tail_estimate + 1e-12
    assert exact == pytest.approx(hilbert_periodic_cot_quadrature(pf, theta, tolerance=1e-8), abs=1e-7)


def test_truncation_warning_in_metadata():
    pf = PeriodizedFunction(Outlier(), 1.0)
    _, info = hilbert_periodic(pf, 0.1, K=64, tolerance=1e-12, return_info=True)
    assert info.truncation_warning and info.tail_estimate > 1e-12
    _, info = hilbert_periodic(PeriodizedFunction(Mollified(MagicF(), 0.2), 1.0), 0.1, return_info=True)
    assert not info.truncation_warning
    with pytest.raises(InvalidArgument):
        hilbert_periodic(pf, 0.1, K=10)
    with pytest.raises(InvalidArgument):
        PeriodizedFunction(Triangle(), 0.0)


def test_circle_grid_properties():
    g = circle_grid(PeriodizedFunction(Triangle(), 0.5))
    assert g.domain == "circle"
    assert np.all(np.isfinite(g.values))
    assert g.sup_norm >= np.max(np.abs(g.values))
    ends = np.interp([0.0, -0.5, 0.5], g.x, g.values)
    assert np.allclose(ends, 0.0, atol=1e-12)


# -- rescaling identity and cot expansion -------------------------------------------

def test_lemma4_examples():
    T = Triangle()
    for delta, theta in ((1.0, 0.3), (0.25, 0.1)):
        lhs = delta * hilbert_periodic(PeriodizedFunction(T, delta), theta)
        assert lemma4_rhs(T, delta, theta) == pytest.approx(lhs, abs=1e-4)
    assert lemma4_rhs(T, 0.5, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_lemma4_grid():
    T = Triangle()
    th = np.linspace(-0.45, 0.45, 19)
    for d in np.linspace(0.1, 1.0, 10):
        lhs = d * hilbert_periodic_exact(PeriodizedFunction(T, d), th)
        assert np.max(np.abs(lhs - lemma4_rhs(T, d, th))) <= 1e-3


def test_lemma4_tail_correction_improves():
    T = Triangle()
    th = np.linspace(-0.45, 0.45, 19)
    lhs = hilbert_periodic_exact(PeriodizedFunction(T, 1.0), th)
    raw = np.max(np.abs(lhs - lemma4_rhs(T, 1.0, th, tail_correction=False)))
    fixed = np.max(np.abs(lhs - lemma4_rhs(T, 1.0, th)))
    assert fixed < 1e-8 < raw


def test_lemma4_preconditions():
    with pytest.raises(InvalidArgument):
        lemma4_rhs(Triangle(), 0.5, 0.5)
    with pytest.raises(InvalidArgument):
        lemma4_rhs(Triangle(), 1.5, 0.1)
    with pytest.raises(InvalidArgument):
        lemma4_rhs(Triangle(), 0.5, 0.1, K=8)


def test_cot_expansion():
    assert cot_expansion_check(0.25, 10_000) == pytest.approx(1.0, abs=1e-3)
    assert cot_expansion_check(0.5, 10_000) == pytest.approx(0.0, abs=1e-4)
    e1 = abs(cot_expansion_check(0.1, 1000) - 1 / math.tan(0.1 * math.pi))
    e2 = abs(cot_expansion_check(0.1, 2000) - 1 / math.tan(0.1 * math.pi))
    assert e2 / e1 == pytest.approx(0.5, abs=0.01)
    with pytest.raises(InvalidArgument):
        cot_expansion_check(2.0, 10)

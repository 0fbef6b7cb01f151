import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import spence

from stacklab import asym
from stacklab.asym import PHI, EpsAsym, LogReal, MainTerm
from stacklab.errors import DomainError, UsageError
from stacklab.genfun import Variant, series

from oracles import partition_numbers

PI = math.pi
SQRT5 = math.sqrt(5)


def rel(a, b):
    return abs(a / b - 1)


# --- catalog --------------------------------------------------------------

def test_main_term_dm():
    mt = asym.main_term(Variant.DM)
    assert (mt.C, mt.alpha, mt.beta) == pytest.approx((1 / 16, 1, 1), rel=1e-15)


def test_main_term_partitions():
    mt = asym.main_term(Variant.GS)
    assert (mt.C, mt.alpha, mt.beta) == pytest.approx((1 / (4 * math.sqrt(3)), 1, 2 / 3), rel=1e-15)
    assert asym.main_term(Variant.P) == mt


def test_hs_over_h_constant_is_phi():
    assert asym.main_term(Variant.HS).C / asym.main_term(Variant.H).C == pytest.approx(PHI, rel=1e-15)


def test_variants_without_main_term():
    with pytest.raises(UsageError):
        asym.main_term(Variant.L)


def test_catalog_is_json():
    doc = json.loads(json.dumps(asym.catalog()))
    assert set(doc["main_terms"]) >= {"s", "ss", "g", "gs", "h", "hs", "d", "dm", "fphi", "f0"}


# --- main_term_value ------------------------------------------------------

def test_degenerate_main_term_is_one():
    assert float(asym.main_term_value(MainTerm(1.0, 0.0, 0.0), 37)) == 1.0


def test_hardy_ramanujan_at_100():
    p100 = partition_numbers(100)[100]
    assert p100 == 190569292
    r = asym.main_term_value(asym.main_term(Variant.GS), 100).ratio(LogReal.from_int(p100))
    assert 1.0 < r < 1.1


def test_dm_main_term_at_four():
    got = float(asym.main_term_value(asym.main_term(Variant.DM), 4))
    assert got == pytest.approx(math.exp(2 * PI) / 64, rel=1e-14)


def test_main_term_value_survives_huge_n():
    v = asym.main_term_value(asym.main_term(Variant.S), 10**8)
    assert v.sign == 1 and v.log_magnitude > 700
    assert "e+" in v.scientific()


# --- Ingham transfer ------------------------------------------------------

def test_ingham_dm():
    mt = asym.ingham_transfer(EpsAsym(1 / (4 * math.sqrt(PI)), 0.5, PI**2 / 4))
    assert (mt.C, mt.alpha, mt.beta) == pytest.approx((1 / 16, 1, 1), rel=1e-13)


def test_ingham_h():
    lam = (1 / PHI) / (math.sqrt(2 * PI) * 5**0.25)
    mt = asym.ingham_transfer(EpsAsym(lam, 0.5, PI**2 / 5))
    ref = asym.main_term(Variant.H)
    assert (mt.C, mt.alpha, mt.beta) == pytest.approx((ref.C, ref.alpha, ref.beta), rel=1e-13)


def test_ingham_plain_substitution():
    mt = asym.ingham_transfer(EpsAsym(1.0, 0.0, PI**2 / 4))
    assert (mt.C, mt.alpha, mt.beta) == pytest.approx((1 / (2 * math.sqrt(2)), 0.75, 1), rel=1e-14)


@pytest.mark.parametrize("A", [0.0, -1.0])
def test_ingham_requires_positive_A(A):
    with pytest.raises(DomainError):
        asym.ingham_transfer(EpsAsym(1.0, 0.0, A))


# --- coeff_ratio ----------------------------------------------------------

def test_coeff_ratio_bands(series_5000):
    assert 0.95 <= asym.coeff_ratio(Variant.GS, 5000, series_5000[Variant.GS]) <= 1.05
    assert 0.85 <= asym.coeff_ratio(Variant.DM, 5000, series_5000[Variant.DM]) <= 1.15


def test_coeff_ratio_at_one():
    r = asym.coeff_ratio(Variant.GS, 1, series(Variant.GS, 1))
    expected = 1 / ((1 / (4 * math.sqrt(3))) * math.exp(PI * math.sqrt(2 / 3)))
    assert r == pytest.approx(expected, rel=1e-13)


def test_coeff_ratio_rejects_zero_coefficient():
    with pytest.raises(DomainError):
        asym.coeff_ratio(Variant.DM, 0, series(Variant.DM, 3))


# --- LogReal --------------------------------------------------------------

finite = st.floats(-1e6, 1e6).filter(lambda x: abs(x) > 1e-6)


@settings(max_examples=200, deadline=None)
@given(finite, finite)
def test_logreal_matches_float_arithmetic(x, y):
    X, Y = LogReal.from_float(x), LogReal.from_float(y)
    assert float(X * Y) == pytest.approx(x * y, rel=1e-14)
    assert float(X / Y) == pytest.approx(x / y, rel=1e-14)
    assert float(X + Y) == pytest.approx(x + y, rel=1e-12, abs=1e-9 * (abs(x) + abs(y)))


@settings(max_examples=200, deadline=None)
@given(st.floats(-1e5, 1e5), st.floats(-30, 30))
def test_logreal_same_sign_add_precision(base, gap):
    a = LogReal(1, base)
    b = LogReal(1, base + gap)
    got = (a + b).log_magnitude
    want = max(base, base + gap) + math.log1p(math.exp(-abs(gap)))
    assert abs(got - want) <= 1e-14 * max(1.0, abs(want))


def test_logreal_zero_and_sign():
    z = LogReal.zero()
    three = LogReal.from_float(3.0)
    assert float(z) == 0.0
    assert float(z + three) == pytest.approx(3.0)
    assert float(-three) == pytest.approx(-3.0)
    assert float(three - three) == 0.0
    with pytest.raises(ZeroDivisionError):
        three / z


def test_logreal_scientific_format():
    assert LogReal.from_int(123456789).scientific(6) == "1.234568e+8"
    assert LogReal(1, 1000 * math.log(10)).scientific(3) == "1.000e+1000"


def test_from_int_huge():
    n = 10**500 + 1
    assert LogReal.from_int(n).log_magnitude == pytest.approx(500 * math.log(10), rel=1e-15)


# --- dilogarithms ---------------------------------------------------------

def test_dilog_special_value():
    assert abs(asym.dilog(PHI**-2) - (PI**2 / 15 - math.log(PHI) ** 2)) < 1e-12


def test_dilog_zero():
    assert asym.dilog(0.0) == 0.0


@pytest.mark.parametrize("x", [-1.0, -0.8, -0.3, 0.1, 0.5, 0.7, 0.95, 0.999])
def test_dilog_against_scipy(x):
    assert asym.dilog(x) == pytest.approx(spence(1 - x), rel=1e-12, abs=1e-15)


def test_dilog_domain():
    with pytest.raises(DomainError):
        asym.dilog(1.5)


def test_quantum_dilog_limit():
    eps = 1e-4
    got = eps * asym.quantum_dilog(0.5, math.exp(-eps))
    assert abs(got.imag) < 1e-15
    assert rel(got.real, asym.dilog(0.5)) < 5e-4


def test_quantum_dilog_laurent():
    eps, x, B = 1e-3, 0.3, 1.0
    lhs = asym.quantum_dilog(math.exp(-B * eps) * x, math.exp(-eps))
    rhs = asym.dilog(x) / eps + (B - 0.5) * math.log(1 - x)
    assert abs(lhs - rhs) <= 10 * eps


def test_quantum_dilog_is_minus_log_pochhammer():
    x, q = 0.4 + 0.2j, 0.7
    direct = -sum(np.log(1 - x * q**j) for j in range(400))
    assert asym.quantum_dilog(x, q) == pytest.approx(direct, rel=1e-13)


@pytest.mark.parametrize("x,q", [(1.2, 0.5), (0.5, 1.0)])
def test_quantum_dilog_domain(x, q):
    with pytest.raises(DomainError):
        asym.quantum_dilog(x, q)


# --- generating functions at q = e^{-eps} -----------------------------------

@pytest.mark.parametrize("v", [Variant.S, Variant.SS, Variant.G, Variant.GS, Variant.H,
                               Variant.HS, Variant.D, Variant.DM, Variant.FPHI, Variant.P])
def test_eval_matches_truncated_series(v):
    eps = 0.3
    q = math.exp(-eps)
    coeffs = series(v, 400).coeffs
    direct = math.fsum(c * q**n for n, c in enumerate(coeffs))
    assert float(asym.eval_genfun(v, eps)) == pytest.approx(direct, rel=1e-12)


def test_false_theta_value():
    got = float(asym.eval_genfun(Variant.L, 0.1))
    assert got == pytest.approx(0.4871, abs=1e-4)
    assert abs(got - 0.5) <= 0.1 / 4


@pytest.mark.parametrize("eps", [0.1, 0.05, 0.02])
def test_eta_inversion(eps):
    assert abs(asym.qinf_ratio(eps) - 1) < eps


def test_eval_dm_against_eps_shape():
    eps = 0.05
    ref = (1 / (4 * math.sqrt(PI))) * math.sqrt(eps) * math.exp(PI**2 / (4 * eps))
    assert 0.9 <= float(asym.eval_genfun(Variant.DM, eps)) / ref <= 1.1


def test_eval_tiny_eps_stays_in_log_space():
    v = asym.eval_genfun(Variant.P, 0.002)
    assert v.log_magnitude > 700
    ref = EpsAsym(1 / math.sqrt(2 * PI), 0.5, PI**2 / 6).value(0.002)
    assert v.ratio(ref) == pytest.approx(1, abs=0.002)


# --- saddle point ---------------------------------------------------------

def test_saddle_data():
    sd = asym.saddle_data()
    assert abs(np.exp(2j * PI * sd.v) - 1 / PHI) < 1e-14
    assert abs(sd.f_v - PI**2 / 30) < 1e-12
    assert abs(sd.fpp_v + 4 * PI**2 * SQRT5) < 1e-10
    assert sd.contour_height == pytest.approx(math.log(PHI) / (2 * PI), rel=1e-15)


def test_saddle_is_critical_by_finite_differences():
    v, h = asym.saddle_data().v, 1e-6
    num = (asym.saddle_exponent(v + h) - asym.saddle_exponent(v - h)) / (2 * h)
    assert abs(num) < 1e-8
    assert abs(asym.saddle_exponent_d1(v)) < 1e-10


def test_contour_against_h():
    eps = 0.05
    c = asym.contour_A(eps)
    assert c < 0
    assert 0.98 <= c / asym.A_from_H(eps) <= 1.02


def test_contour_against_main_term():
    eps = 0.02
    c = asym.contour_A_log(eps)
    assert c.sign == -1
    assert 0.90 <= c.ratio(asym.A_mainterm(eps)) <= 1.10


def test_hs_over_h_approaches_phi():
    near = asym.hs_over_h(0.02)
    assert abs(near - PHI) <= 0.08
    assert abs(asym.hs_over_h(0.01) - PHI) < abs(asym.hs_over_h(0.05) - PHI)

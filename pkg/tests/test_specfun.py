import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from morsesqueeze.errors import DegenerateParameterError, DomainError, QuadratureError
from morsesqueeze.specfun import (ScaledComplex, ScaledReal, assoc_laguerre, assoc_laguerre_log,
                                  digamma, gauss_laguerre, halfline_quadrature, hermite_complex,
                                  hyp2f1_terminating, log_gamma, pochhammer)

# frozen from mpmath.loggamma at 50 digits, and equal to ln Gamma(1.44) + sum ln(1.44 + j)
LGAMMA_57_44 = 174.1295775624717949869267
# frozen from mpmath.diff(loggamma) at 50 digits
DIGAMMA_56_44 = 4.024293002110973717358261
# exact rational monomial sums
LAGUERRE_2_35_1 = 59 / 8
HERMITE_6 = complex(288.626112, -383.312384)
HYP_4 = complex(0.8969393367638507, 0.028192537755090546)


# -- ScaledReal / ScaledComplex ------------------------------------------------

finite = st.floats(min_value=-1e300, max_value=1e300, allow_nan=False).filter(lambda v: v != 0)


@given(finite)
def test_scaled_roundtrip_exact(v):
    s = ScaledReal.from_float(v)
    assert float(s) == v
    assert 1.0 <= s.mantissa < 2.0


def test_scaled_zero():
    z = ScaledReal.from_float(0.0)
    assert z.is_zero() and z.mantissa == 0 and float(z) == 0.0


@given(finite, finite)
def test_scaled_mul_matches_float(a, b):
    exact = a * b
    got = ScaledReal.from_float(a) * ScaledReal.from_float(b)
    if math.isfinite(exact) and abs(exact) > 1e-300:
        assert float(got) == pytest.approx(exact, rel=1e-15)
    assert got.log() == pytest.approx(math.log(abs(a)) + math.log(abs(b)), abs=1e-12)


@given(finite, finite)
def test_scaled_add_matches_float(a, b):
    got = float(ScaledReal.from_float(a) + ScaledReal.from_float(b))
    assert got == pytest.approx(a + b, rel=1e-15, abs=1e-300 + 1e-16 * (abs(a) + abs(b)))


def test_scaled_beyond_double_range():
    big = ScaledReal.from_log(5000.0)
    assert big.log() == pytest.approx(5000.0, rel=1e-15)
    with pytest.raises(OverflowError):
        float(big)
    assert float(big / ScaledReal.from_log(4999.0)) == pytest.approx(math.e, rel=1e-12)
    assert big.sqrt().log() == pytest.approx(2500.0, rel=1e-15)


def test_scaled_complex_ops():
    a, b = 3 - 4j, -1.5 + 0.25j
    sa, sb = ScaledComplex.from_complex(a), ScaledComplex.from_complex(b)
    assert complex(sa * sb) == pytest.approx(a * b, rel=1e-15)
    assert complex(sa / sb) == pytest.approx(a / b, rel=1e-15)
    assert complex(sa + sb) == pytest.approx(a + b, rel=1e-15)
    assert complex(sa - sb) == pytest.approx(a - b, rel=1e-15)
    assert float(sa.abs()) == pytest.approx(5.0, rel=1e-15)
    assert float(sa.abs2()) == pytest.approx(25.0, rel=1e-15)
    assert complex(sa.sqrt()) == pytest.approx(cmath.sqrt(a), rel=1e-15)
    assert complex(sa.conjugate()) == a.conjugate()


# -- gamma family --------------------------------------------------------------

def test_log_gamma_values():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)
    assert log_gamma(57.44) == pytest.approx(LGAMMA_57_44, rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, float("inf"), float("nan")])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


@settings(max_examples=50)
@given(st.floats(min_value=1e-3, max_value=700.0))
def test_log_gamma_vs_mpmath(x):
    ref = float(mpmath.loggamma(x))
    assert log_gamma(x) == pytest.approx(ref, rel=1e-13, abs=1e-14)


def test_digamma_values():
    assert digamma(1.0) == pytest.approx(-0.57721566490153286, rel=1e-11)
    assert digamma(2.0) == pytest.approx(digamma(1.0) + 1.0, rel=1e-13)
    assert digamma(56.44) == pytest.approx(DIGAMMA_56_44, rel=1e-11)
    with pytest.raises(DomainError):
        digamma(-0.5)


def test_digamma_vs_finite_differences():
    xs = np.linspace(0.5, 600.0, 61)
    for x in xs:
        h = 1e-4 * max(1.0, x)
        # Richardson-extrapolated central differences
        d1 = (log_gamma(x + h) - log_gamma(x - h)) / (2 * h)
        d2 = (log_gamma(x + h / 2) - log_gamma(x - h / 2)) / h
        assert abs(digamma(x) - (4 * d2 - d1) / 3) <= 1e-8


def test_pochhammer():
    assert float(pochhammer(3.7, 0)) == 1.0
    assert float(pochhammer(1.0, 5)) == 120.0
    p = 28.22
    a = 1 - 2 * p
    assert float(pochhammer(a, 3)) == pytest.approx(-161290.128384, rel=3e-15)
    assert float(pochhammer(a, 3)) == pytest.approx(a * (a + 1) * (a + 2), rel=3e-15)


@given(st.floats(min_value=-60, max_value=60), st.integers(min_value=0, max_value=300))
def test_pochhammer_functional_equation(a, n):
    lhs, rhs = pochhammer(a, n + 1), pochhammer(a, n) * (a + n)
    assert lhs.sign == rhs.sign
    if not rhs.is_zero():
        assert lhs.isclose(rhs, rel_tol=4e-16)


# -- polynomials ---------------------------------------------------------------

def test_laguerre_low_orders():
    assert assoc_laguerre(0, 2.5, 3.0) == 1.0
    assert assoc_laguerre(1, 2.5, 3.0) == pytest.approx(1 + 2.5 - 3.0, rel=1e-15)
    assert assoc_laguerre(2, 3.5, 1.0) == pytest.approx(LAGUERRE_2_35_1, rel=1e-14)


def _laguerre_exact(n, a: Fraction, y: Fraction) -> Fraction:
    total = Fraction(0)
    for k in range(n + 1):
        c = Fraction(1)
        for i in range(n - k):
            c = c * (a + n - i) / (i + 1)
        total += (-1) ** k * c * y ** k / math.factorial(k)
    return total


@pytest.mark.parametrize("n,a,y", [(7, Fraction(1, 3), Fraction(5, 2)),
                                   (15, Fraction(101, 2), Fraction(7)),
                                   (30, Fraction(561, 10), Fraction(40))])
def test_laguerre_vs_exact_rationals(n, a, y):
    ref = float(_laguerre_exact(n, a, y))
    assert assoc_laguerre(n, float(a), float(y)) == pytest.approx(ref, rel=1e-11)


def test_laguerre_high_degree_vs_mpmath():
    for n, a, y in [(150, 40.2, 120.0), (261, 1.1, 300.0), (300, 520.3, 700.0)]:
        ref = mpmath.laguerre(n, a, y)
        ln, sg = assoc_laguerre_log(n, a, y)
        assert sg == (1 if ref > 0 else -1)
        assert float(ln) == pytest.approx(float(mpmath.log(abs(ref))), abs=1e-11)


@settings(max_examples=60)
@given(st.integers(1, 200), st.floats(-0.9, 500.0), st.floats(0.0, 800.0))
def test_laguerre_recurrence_consistency(n, a, y):
    lm, l0, lp = (assoc_laguerre_log(k, a, y) for k in (n - 1, n, n + 1))
    ref = max(lm[0], l0[0], lp[0], 0.0) if np.isfinite(l0[0]) else 0.0
    # compare in a common scale: (n+1)L_{n+1} = (2n+1+a-y)L_n - (n+a)L_{n-1}
    s = lambda t: t[1] * math.exp(t[0] - ref)
    lhs = (n + 1) * s(lp)
    rhs = (2 * n + 1 + a - y) * s(l0) - (n + a) * s(lm)
    scale = (n + 1) * abs(s(lp)) + abs(2 * n + 1 + a - y) * abs(s(l0)) + abs(n + a) * abs(s(lm))
    assert abs(lhs - rhs) <= 1e-10 * max(scale, 1e-300)


def test_laguerre_broadcast_matches_scipy():
    n = np.arange(12)[:, None]
    y = np.linspace(0.0, 30.0, 7)[None, :]
    assert np.allclose(assoc_laguerre(n, 2.5, y), special.eval_genlaguerre(n, 2.5, y), rtol=1e-11)


def test_hermite():
    w = 0.3 - 1.1j
    assert hermite_complex(0, w) == 1
    assert hermite_complex(2, w) == pytest.approx(4 * w * w - 2, rel=1e-15)
    assert hermite_complex(6, 1.3 + 0.4j) == pytest.approx(HERMITE_6, rel=1e-13)


@given(st.integers(0, 60), st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_hermite_parity(n, w):
    a, b = hermite_complex(n, -w), (-1) ** n * hermite_complex(n, w)
    assert abs(a - b) <= 1e-12 * max(abs(b), 1e-300)


def test_hyp2f1():
    v = 0.7 - 0.2j
    assert hyp2f1_terminating(0, v, 56.44) == 1
    # the k = 1 term is 2 (-1)(-v) / (1 - A), i.e. -2v/(A-1)
    assert hyp2f1_terminating(1, v, 56.44) == pytest.approx(1 - 2 * v / (56.44 - 1), rel=1e-15)
    assert hyp2f1_terminating(4, v, 56.44) == pytest.approx(HYP_4, rel=1e-13)


def test_hyp2f1_vs_mpmath():
    for n, v, A in [(12, 3.1 + 0.5j, 56.44), (27, -8.0 + 2j, 29.0 + 0.5)]:
        ref = complex(mpmath.hyp2f1(-n, -v, 1 - A, 2))
        assert hyp2f1_terminating(n, v, A) == pytest.approx(ref, rel=1e-9)


def test_hyp2f1_degenerate():
    with pytest.raises(DegenerateParameterError):
        hyp2f1_terminating(5, 0.3, 3.0)       # (1-A)_2 = (-2)(-1)... vanishes at k = 3
    hyp2f1_terminating(1, 0.3, 3.0)           # only (1-A)_1 = -2 is needed


# -- quadrature ----------------------------------------------------------------

def test_rule_invariants():
    for order, alpha in [(1, 0.0), (20, 0.0), (200, 0.0), (150, 55.4), (400, 520.3), (60, -0.5)]:
        r = gauss_laguerre(order, alpha)
        assert r.order == order and len(r.nodes) == order
        assert np.all(r.nodes > 0) and np.all(np.diff(r.nodes) > 0)
        # far-tail weights underflow doubles; positivity lives in the log form
        assert np.all(np.isfinite(r.log_weights)) and np.all(r.weights >= 0)
        assert abs(r.weights.sum() - 1.0) <= 1e-12


def test_rule_vs_scipy():
    x, w = special.roots_genlaguerre(80, 3.3)
    r = gauss_laguerre(80, 3.3)
    assert np.allclose(r.nodes, x, rtol=1e-12)
    assert np.allclose(r.weights, w / w.sum(), rtol=1e-10)


def test_rule_exact_for_polynomials():
    r = gauss_laguerre(10, 2.0)
    # E[y^k] under y^2 e^-y / Gamma(3) is (3)_k, exact for k < 20
    for k in range(20):
        assert r.expect(lambda y: y ** k) == pytest.approx(float(pochhammer(3.0, k)), rel=1e-12)


def test_rule_is_immutable():
    r = gauss_laguerre(8)
    with pytest.raises(ValueError):
        r.nodes[0] = 1.0
    assert gauss_laguerre(8) is r


def test_halfline_basic():
    r = gauss_laguerre(30)
    assert halfline_quadrature(lambda y: np.exp(-y), r) == pytest.approx(1.0, rel=1e-13)
    assert halfline_quadrature(lambda y: y * np.exp(-y), r) == pytest.approx(1.0, rel=1e-13)


def test_halfline_ground_state_normalization(hcl):
    eps0 = hcl.p
    log_n0 = 0.5 * (math.log(2 * eps0) - log_gamma(2 * hcl.p + 1))
    # psi_0^2 dx = N_0^2 e^-y y^{2 eps_0 - 1} dy / beta
    r = gauss_laguerre(40, 2 * eps0 - 1)
    f = lambda y: np.exp(2 * log_n0 - y + (2 * eps0 - 1) * np.log(y))
    assert halfline_quadrature(f, r) == pytest.approx(1.0, abs=1e-12)


def test_halfline_reports_bad_node():
    r = gauss_laguerre(10)
    with pytest.raises(QuadratureError, match="node"):
        halfline_quadrature(lambda y: np.where(y > 5, np.nan, 1.0), r)


def test_halfline_detects_nonconvergence():
    r = gauss_laguerre(4)
    with pytest.raises(QuadratureError, match="order 4 -> 8"):
        halfline_quadrature(lambda y: np.exp(-y) * np.abs(np.sin(3 * y)), r)

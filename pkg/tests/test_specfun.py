import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from irscov import specfun as sf
from irscov.errors import ConvergenceError, DomainError


# ---------------------------------------------------------------- ln_gamma

def test_ln_gamma_at_one_is_zero():
    assert sf.ln_gamma(1.0) == 0.0


def test_ln_gamma_half_is_log_sqrt_pi():
    expected = float(mp.log(mp.sqrt(mp.pi)))  # 0.5723649429...
    assert sf.ln_gamma(0.5) == pytest.approx(expected, rel=1e-14)


def test_ln_gamma_factorial():
    assert sf.ln_gamma(5.0) == pytest.approx(math.log(24), rel=1e-14)


@pytest.mark.parametrize("x", [1.0 + 1e-9, 2.0 - 1e-9, 1.25, 1.9999, 2.5, 9.99, 10.0])
def test_ln_gamma_relative_accuracy_near_zeros_and_seams(x):
    expected = float(mp.loggamma(x))
    assert sf.ln_gamma(x) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, math.nan, math.inf])
def test_ln_gamma_domain(x):
    with pytest.raises(DomainError):
        sf.ln_gamma(x)


def test_ln_gamma_array_roundtrip():
    x = np.array([0.5, 1.0, 5.0])
    out = sf.ln_gamma(x)
    assert isinstance(out, np.ndarray) and out.shape == (3,)
    assert isinstance(sf.ln_gamma(3.0), float)


# ---------------------------------------------------------------- incomplete Gamma

@pytest.mark.parametrize("k", [0.1, 1.0, 1.61, 40.0, 1e4])
def test_q_at_zero_is_one(k):
    assert sf.reg_gamma_q(k, 0.0) == 1.0
    assert sf.reg_gamma_p(k, 0.0) == 0.0


@pytest.mark.parametrize("s", [1e-6, 0.3, 1.0, 2.0, 7.5, 30.0, 300.0])
def test_q_shape_one_is_exponential_tail(s):
    assert sf.reg_gamma_q(1.0, s) == pytest.approx(math.exp(-s), rel=1e-12)


def test_p_one_one():
    assert sf.reg_gamma_p(1.0, 1.0) == pytest.approx(1 - math.exp(-1), rel=1e-13)


def test_q_against_quadrature_oracle():
    assert sf.reg_gamma_q(2.5, 2.5) == pytest.approx(float(oracles.reg_upper(2.5, 2.5)), rel=1e-12)


def test_p_against_quadrature_oracle():
    assert sf.reg_gamma_p(3.0, 2.0) == pytest.approx(float(oracles.reg_lower(3.0, 2.0)), rel=1e-12)


def test_incomplete_gamma_domain():
    with pytest.raises(DomainError):
        sf.reg_gamma_q(0.0, 1.0)
    with pytest.raises(DomainError):
        sf.reg_gamma_p(1.0, -1e-9)


def test_incomplete_gamma_non_convergence():
    tight = sf.Accuracy(rel_tol=1e-12, max_iter=100)
    with pytest.raises(ConvergenceError):
        sf.reg_gamma_q(1e6, 1e6, accuracy=tight)


def test_incomplete_gamma_infinite_argument():
    assert sf.reg_gamma_q(3.0, math.inf) == 0.0


@settings(max_examples=300, deadline=None)
@given(
    k=st.floats(min_value=1e-2, max_value=1e3),
    s=st.floats(min_value=0.0, max_value=2e3),
)
def test_p_plus_q_is_one(k, s):
    p, q = sf.reg_gamma_p(k, s), sf.reg_gamma_q(k, s)
    assert 0.0 <= p <= 1.0 and 0.0 <= q <= 1.0
    assert abs(p + q - 1.0) <= 1e-12


def test_q_monotone_on_grid():
    ks = np.geomspace(0.05, 500, 40)
    ss = np.linspace(0, 800, 400)
    grid = sf.reg_gamma_q(ks[:, None], ss[None, :])
    assert np.all(np.diff(grid, axis=1) <= 1e-15)  # non-increasing in s
    assert np.all(np.diff(grid, axis=0) >= -1e-15)  # non-decreasing in k


def test_accuracy_invariants():
    with pytest.raises(DomainError):
        sf.Accuracy(rel_tol=1e-5)
    with pytest.raises(DomainError):
        sf.Accuracy(max_iter=99)
    assert sf.DEFAULT_ACCURACY.rel_tol == 1e-12


# ---------------------------------------------------------------- Bessel K0, K1

def test_k0_one_matches_cosine_integral():
    # the oscillatory representation int_0^inf cos(t)/sqrt(1+t^2) dt
    expected = float(oracles.k0_cosine(1))
    assert expected == pytest.approx(0.4210244382, abs=1e-10)
    assert sf.bessel_k0(1.0) == pytest.approx(expected, rel=1e-12)


def test_k0_small_argument_expansion():
    x = 1e-8
    assert sf.bessel_k0(x) == pytest.approx(-math.log(x / 2) - sf.EULER_GAMMA, rel=1e-6)


def test_k0_ten():
    expected = float(oracles.k0(10))
    assert expected == pytest.approx(1.778006232e-5, rel=1e-9)
    assert sf.bessel_k0(10.0) == pytest.approx(expected, rel=1e-12)


def test_k1_one():
    expected = float(oracles.k1(1))
    assert sf.bessel_k1(1.0) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(0.6019072302, abs=1e-10)


def test_x_k1_limit_at_zero():
    x = 1e-8
    assert abs(x * sf.bessel_k1(x) - 1.0) < 1e-6


def test_k1_five():
    expected = float(oracles.k1(5))
    assert expected == pytest.approx(4.044613445e-3, rel=1e-9)
    assert sf.bessel_k1(5.0) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("f", [sf.bessel_k0, sf.bessel_k1])
@pytest.mark.parametrize("x", [0.0, -2.0])
def test_bessel_domain(f, x):
    with pytest.raises(DomainError):
        f(x)


def test_bessel_underflow_flushes_to_zero():
    assert sf.bessel_k0(720.0) == 0.0
    assert sf.bessel_k1(720.0) == 0.0
    assert sf.bessel_k0e(720.0) > 0.0


def test_bessel_both_sides_of_crossover_agree():
    lo, hi = np.nextafter(2.0, 0.0), np.nextafter(2.0, 3.0)
    assert sf.bessel_k0(lo) == pytest.approx(sf.bessel_k0(hi), rel=1e-12)
    assert sf.bessel_k1(lo) == pytest.approx(sf.bessel_k1(hi), rel=1e-12)


@pytest.mark.parametrize("x", [0.05, 0.7, 1.9, 2.1, 4.0, 25.0, 300.0])
def test_recurrence_to_k2(x):
    # K2 from the oracle integral int exp(-x cosh t) cosh(2t) dt, scaled by e^x
    k2e = mp.quad(
        lambda t: mp.exp(-x * (mp.cosh(t) - 1)) * mp.cosh(2 * t), oracles._kernel_breaks(mp.mpf(x))
    )
    lhs = sf.bessel_k0e(x) + 2.0 / x * sf.bessel_k1e(x)
    assert abs(lhs / float(k2e) - 1.0) <= 1e-8


def test_derivative_identity_by_finite_differences():
    h = 1e-5
    xs = np.geomspace(0.05, 50, 60)
    f = lambda x: x * sf.bessel_k1(x)
    deriv = (f(xs + h) - f(xs - h)) / (2 * h)
    np.testing.assert_allclose(deriv, -xs * sf.bessel_k0(xs), rtol=1e-5)


def test_bessel_tails_decrease_and_stay_finite():
    x = np.geomspace(1e-6, 700, 2000)
    for f in (sf.bessel_k0, sf.bessel_k1):
        y = f(x)
        assert np.all(np.isfinite(y))
        assert np.all(np.diff(y) <= 0)

import math

import mpmath
import numpy as np
import pytest

from wedgestark.errors import DomainError
from wedgestark.specfun import bessel_j, bessel_j_prime, first_zero, ln_gamma

mpmath.mp.dps = 50


def test_ln_gamma_examples():
    assert ln_gamma(1.0) == 0.0
    assert ln_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-14)
    assert ln_gamma(11.0) == pytest.approx(math.log(math.factorial(10)), rel=1e-14)


def test_ln_gamma_against_mpmath():
    for x in np.linspace(0.5, 200.0, 157):
        ref = float(mpmath.loggamma(x))
        # relative accuracy, measured absolutely near the zeros at x = 1, 2
        assert abs(ln_gamma(x) - ref) <= 1e-12 * max(1.0, abs(ref))


@pytest.mark.parametrize("x", [0.0, -1.0, math.inf])
def test_ln_gamma_domain(x):
    with pytest.raises(DomainError):
        ln_gamma(x)


def test_bessel_examples():
    assert bessel_j(0.0, 0.0) == 1.0
    assert bessel_j(3.0, 0.0) == 0.0
    assert bessel_j(0.5, math.pi / 2) == pytest.approx(2 / math.pi, abs=1e-15)
    # mpmath at 50 digits
    assert bessel_j(20.0, 10.0) == pytest.approx(1.151336924781339778e-05, rel=1e-12)


def test_bessel_against_mpmath_over_artifact_range():
    rng = np.random.default_rng(7)
    for _ in range(120):
        nu = float(rng.uniform(0.0, 60.0))
        x = float(rng.uniform(0.0, nu + 10 * nu ** (1 / 3) + 20))
        assert abs(bessel_j(nu, x) - float(mpmath.besselj(nu, x))) < 1e-10, (nu, x)


def test_bessel_array_shape():
    x = np.linspace(0.1, 5, 12).reshape(3, 4)
    out = bessel_j(1.0, x)
    assert out.shape == (3, 4)
    assert out[1, 2] == bessel_j(1.0, x[1, 2])


def test_bessel_domain():
    with pytest.raises(DomainError):
        bessel_j(1.0, -0.5)
    with pytest.raises(DomainError):
        bessel_j(-1.0, 0.5)
    with pytest.raises(DomainError):
        bessel_j_prime(1.0, 0.0)


def test_derivative_small_argument():
    for x in (1e-3, 1e-2):
        assert bessel_j_prime(0.0, x) == pytest.approx(-x / 2, rel=1e-4)


def test_derivative_closed_form():
    # d/dx sqrt(2/(pi x)) sin x at pi/2, by mpmath differentiation
    assert bessel_j_prime(0.5, math.pi / 2) == pytest.approx(-0.2026423672846755428877589, abs=1e-13)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 4.0, 20.0, 60.0])
def test_derivative_negative_at_first_zero(nu):
    assert bessel_j_prime(nu, first_zero(nu)) < 0.0


@pytest.mark.parametrize("nu,expected", [
    (0.5, math.pi),
    (0.0, 2.404825557695772768621632),
    (1.0, 3.831705970207512315614436),
    (10.0, 14.47550068655454123845164),
    (20.0, 25.41714081407252358043161),
])
def test_first_zero(nu, expected):
    assert abs(first_zero(nu) - expected) < 1e-10


def test_first_zero_order_limit():
    with pytest.raises(DomainError):
        first_zero(60.5)


def test_positive_below_first_zero():
    for nu in (0.0, 0.5, 1.0, 3.7, 20.0, 60.0):
        z = first_zero(nu)
        x = np.linspace(z * 1e-3, z * (1 - 1e-6), 400)
        assert np.all(bessel_j(nu, x) > 0.0)


def test_zeros_increase_with_order():
    zeros = [first_zero(nu) for nu in (0.5, 1, 2, 4, 8, 16, 32)]
    assert all(b > a for a, b in zip(zeros, zeros[1:]))


def _spherical_closed_form(k, x):
    s, c = math.sin(x), math.cos(x)
    pref = math.sqrt(2 / (math.pi * x))
    if k == 0:
        return pref * s
    if k == 1:
        return pref * (s / x - c)
    return pref * ((3 / x**2 - 1) * s - 3 * c / x)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_half_integer_closed_forms(k):
    for x in np.linspace(0.05, 20.0, 200):
        assert abs(bessel_j(k + 0.5, x) - _spherical_closed_form(k, x)) < 1e-9


def test_recurrence_residual():
    rng = np.random.default_rng(11)
    for _ in range(100):
        nu = float(rng.uniform(1.0, 60.0))
        x = float(rng.uniform(0.1, nu + 10 * nu ** (1 / 3) + 20))
        r = bessel_j(nu - 1, x) + bessel_j(nu + 1, x) - 2 * nu / x * bessel_j(nu, x)
        assert abs(r) < 1e-9, (nu, x)

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wedgestark.errors import NonFiniteIntegrand, UnsupportedOrder
from wedgestark.model import WedgeGeometry
from wedgestark.quadrature import converged_order, doubling_check, gauss_legendre, integrate_wedge


def test_two_point_rule():
    r = gauss_legendre(2)
    assert np.allclose(r.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    assert np.allclose(r.weights, [1.0, 1.0], atol=1e-15)


def test_three_point_rule():
    r = gauss_legendre(3)
    assert np.allclose(r.nodes, [-math.sqrt(0.6), 0.0, math.sqrt(0.6)], atol=1e-15)
    assert np.allclose(r.weights, [5 / 9, 8 / 9, 5 / 9], atol=1e-15)


def test_x6_with_four_points():
    r = gauss_legendre(4)
    assert abs(np.dot(r.weights, r.nodes**6) - 2 / 7) < 1e-12


@pytest.mark.parametrize("n", [2, 5, 17, 96, 192, 512])
def test_rule_invariants(n):
    r = gauss_legendre(n)
    assert abs(r.weights.sum() - 2.0) < 1e-13
    assert np.all(np.diff(r.nodes) > 0)
    assert np.all(r.weights > 0)
    assert np.allclose(r.nodes, -r.nodes[::-1], atol=1e-15)
    assert np.allclose(r.weights, r.weights[::-1], atol=1e-15)
    ref_x, ref_w = np.polynomial.legendre.leggauss(n)
    assert np.max(np.abs(r.nodes - ref_x)) < 1e-14
    assert np.max(np.abs(r.weights - ref_w)) < 1e-13


@given(st.integers(2, 40), st.data())
def test_polynomial_exactness(n, data):
    degree = data.draw(st.integers(0, 2 * n - 1))
    r = gauss_legendre(n)
    exact = 2.0 / (degree + 1) if degree % 2 == 0 else 0.0
    assert abs(np.dot(r.weights, r.nodes**degree) - exact) < 1e-12


@pytest.mark.parametrize("n", [1, 513, 2.0, True])
def test_unsupported_order(n):
    with pytest.raises(UnsupportedOrder):
        gauss_legendre(n)


def test_wedge_integrals_analytic():
    half = WedgeGeometry(1.0, math.pi, 1.0)
    assert integrate_wedge(lambda r, t: r, half, 8, 8) == pytest.approx(math.pi / 2, abs=1e-14)
    assert integrate_wedge(lambda r, t: r * np.cos(t) * r, half, 8, 16) == pytest.approx(2 / 3, abs=1e-13)
    quarter = WedgeGeometry(2.0, math.pi / 2, 1.0)
    assert integrate_wedge(lambda r, t: 1.0, quarter, 4, 4) == pytest.approx(math.pi, abs=1e-14)


def test_stacked_integrand():
    g = WedgeGeometry(1.0, math.pi, 1.0)
    out = integrate_wedge(lambda r, t: np.stack([r + 0 * t, r * r + 0 * t]), g, 8, 8)
    assert out.shape == (2,)
    assert out[0] == pytest.approx(math.pi / 2, abs=1e-14)
    assert out[1] == pytest.approx(math.pi / 3, abs=1e-14)


def test_open_rule_never_samples_singularities():
    g = WedgeGeometry(1.0, math.pi, 1.0)
    # 1/rho and 1/cos(theta) blow up only on the boundary of the wedge
    value = integrate_wedge(lambda r, t: 1.0 / (r * np.cos(t)) * r * np.cos(t), g, 16, 16)
    assert value == pytest.approx(math.pi, abs=1e-13)


def test_non_finite_integrand():
    g = WedgeGeometry(1.0, math.pi, 1.0)
    with pytest.raises(NonFiniteIntegrand):
        integrate_wedge(lambda r, t: np.where(r > 0.5, np.nan, 1.0) + 0 * t, g, 8, 8)


def test_doubling_helpers():
    g = WedgeGeometry(1.0, math.pi, 1.0)
    f = lambda r, t: np.exp(-r * np.cos(t)) * r
    fine, rel = doubling_check(f, g, 16, 16)
    assert rel < 1e-12
    assert converged_order(f, g, 1e-9) <= 16

"""Adaptive quadrature against closed forms and scipy.integrate."""

import math

import numpy as np
import pytest
import scipy.integrate as si

from uavcov.numerics import AccuracyError, QuadratureSpec, gauss_laguerre, integrate


def test_quarter_circle():
    assert integrate(lambda x: 4.0 / (1.0 + x * x), 0.0, 1.0) == pytest.approx(
        math.pi, abs=1e-12
    )


def test_semi_infinite_exponential():
    assert integrate(lambda x: np.exp(-x), 0.0, np.inf) == pytest.approx(1.0, abs=1e-10)


def test_semi_infinite_gamma_moment():
    assert integrate(lambda x: x**3 * np.exp(-x), 0.0, np.inf) == pytest.approx(
        6.0, rel=1e-9
    )


def test_reciprocal_power_tail():
    # int_1^inf x^-2.375 dx = 1/1.375
    val = integrate(lambda x: x**-2.375, 1.0, np.inf)
    assert val == pytest.approx(1.0 / 1.375, rel=1e-10)


def test_sine_identity():
    # int_0^inf dr/(1 + r^(1/v)) = pi v / sin(pi v) for v in (0, 1)
    v = 8.0 / 11.0
    val = integrate(lambda r: 1.0 / (1.0 + r ** (1.0 / v)), 0.0, np.inf)
    assert val == pytest.approx(math.pi * v / math.sin(math.pi * v), rel=1e-10)


def test_oscillatory_against_scipy():
    f = lambda x: np.cos(7.0 * x) * np.exp(-0.5 * x)
    ours = integrate(f, 0.0, 20.0)
    ref, _ = si.quad(f, 0.0, 20.0, epsabs=1e-13, epsrel=1e-13, limit=400)
    assert ours == pytest.approx(ref, abs=1e-11)


def test_tolerance_tightening_changes_little():
    f = lambda x: np.sqrt(np.maximum(x, 0.0)) * np.exp(-x)
    loose = integrate(f, 0.0, np.inf, QuadratureSpec(rel_tol=1e-6, abs_tol=1e-10))
    tight = integrate(f, 0.0, np.inf, QuadratureSpec(rel_tol=1e-12, abs_tol=1e-14))
    exact = math.sqrt(math.pi) / 2.0
    assert tight == pytest.approx(exact, rel=1e-9)
    assert abs(loose - exact) <= 1e-5


def test_subdivision_budget_raises():
    # needle too sharp for 3 subdivisions; must refuse, not silently answer
    spec = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-14, max_subdivisions=3)
    with pytest.raises(AccuracyError):
        integrate(lambda x: 1.0 / (1e-8 + (x - 0.613) ** 2), 0.0, 1.0, spec)


def test_accuracy_error_carries_estimate():
    spec = QuadratureSpec(rel_tol=1e-14, abs_tol=1e-16, max_subdivisions=2)
    try:
        integrate(lambda x: np.exp(-x * x), 0.0, 5.0, spec)
    except AccuracyError as err:
        assert err.estimate == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-3)
        assert err.error_bound > 0.0
    else:
        pytest.fail("expected AccuracyError")


def test_gauss_laguerre_polynomial_exactness():
    # n-node rule integrates x^k e^-x exactly through degree 2n-1
    x, w = gauss_laguerre(8)
    for k in range(0, 16):
        assert float(np.sum(w * x**k)) == pytest.approx(math.factorial(k), rel=1e-11)


def test_gauss_laguerre_cached_identity():
    a = gauss_laguerre(64)
    b = gauss_laguerre(64)
    assert a[0] is b[0] and a[1] is b[1]

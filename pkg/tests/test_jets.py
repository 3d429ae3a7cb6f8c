"""Truncated Taylor arithmetic against closed forms, finite differences,
and high-precision differentiation of random composition trees."""

import math

import mpmath
import numpy as np
import pytest

from uavcov.numerics import (
    Jet,
    JetSingularityError,
    antiderivative_compose,
    jet_eval,
    jet_exp,
    jet_log,
)
from uavcov.validation import (
    ensure_variable,
    evaluate_expression,
    finite_difference,
    random_expression,
)


def test_exponential_series():
    e = jet_exp(Jet.variable(0.0, 5))
    assert np.allclose(e.coeffs, [1, 1, 1 / 2, 1 / 6, 1 / 24, 1 / 120], atol=1e-15)


def test_reciprocal_series():
    inv = 1.0 / Jet.variable(2.0, 3)
    assert np.allclose(inv.coeffs, [0.5, -0.25, 0.125, -0.0625], atol=1e-15)


def test_log_series():
    lg = jet_log(Jet.variable(1.0, 4))
    assert np.allclose(lg.coeffs, [0, 1, -1 / 2, 1 / 3, -1 / 4], atol=1e-15)


def test_product_rule():
    t = Jet.variable(1.3, 4)
    left = (t * t) * jet_exp(t)
    right = jet_eval(lambda x: x * x * jet_exp(x), 1.3, 4)
    assert np.allclose(left.coeffs, right.coeffs, rtol=1e-14)


def test_integer_and_real_powers_agree():
    t = Jet.variable(1.7, 5)
    assert np.allclose((t**3).coeffs, (t ** 3.0).coeffs, rtol=1e-12)
    # negative integer power via reciprocal
    assert np.allclose((t**-2).coeffs, (1.0 / (t * t)).coeffs, rtol=1e-13)


def test_division_by_zero_constant_term():
    with pytest.raises(JetSingularityError):
        1.0 / Jet.variable(0.0, 3)


def test_derivative_coefficient_scaling():
    # f = exp(2t) at 0: n-th derivative is 2^n
    f = jet_exp(2.0 * Jet.variable(0.0, 6))
    for n in range(7):
        assert f.derivative_coefficient(n) == pytest.approx(2.0**n, rel=1e-13)


def test_antiderivative_compose_log():
    # T(y) = log(1+y) via T' = 1/(1+y), folded over y(t) = t^2 at t0=0.9
    y = Jet.variable(0.9, 5) ** 2
    t_jet = antiderivative_compose(
        math.log(1.0 + 0.81), lambda u: 1.0 / (1.0 + u), y
    )
    direct = jet_log(1.0 + y)
    assert np.allclose(t_jet.coeffs, direct.coeffs, rtol=1e-12)


def test_third_derivative_vs_finite_difference():
    f = lambda t: t * t * math.exp(-1.0 / t) / (1.0 + t) if not isinstance(t, Jet) \
        else t * t * jet_exp(-1.0 / t) / (1.0 + t)
    jet = f(Jet.variable(0.8, 4))
    d3 = jet.derivative_coefficient(3)
    fd = finite_difference(lambda t: f(t), 0.8, 3)
    assert d3 == pytest.approx(fd, rel=1e-6)


def test_random_compositions_against_mpmath():
    """20 random smooth trees: jet derivatives match mpmath.diff to order 7."""
    rng = np.random.default_rng(424242)
    order = 7
    with mpmath.workdps(40):
        for _ in range(20):
            tree = ensure_variable(random_expression(rng, depth=3))
            x0 = float(rng.uniform(0.4, 1.2))
            jet = evaluate_expression(tree, Jet.variable(x0, order))
            for n in range(order + 1):
                ref = mpmath.diff(
                    lambda t: evaluate_expression(tree, t, mpmath.exp, mpmath.log),
                    mpmath.mpf(x0),
                    n,
                )
                d_jet = jet.derivative_coefficient(n)
                assert abs(d_jet - float(ref)) <= 1e-5 * max(1.0, abs(float(ref))), (
                    f"tree {tree} order {n}: jet {d_jet} vs mpmath {ref}"
                )


def test_shifted_derivative_drops_leading():
    t = Jet.variable(0.5, 4)
    f = jet_exp(t)
    shifted = f.shifted_derivative()
    for n in range(4):
        assert shifted.coeffs[n] == pytest.approx((n + 1) * f.coeffs[n + 1], rel=1e-14)


def test_truncated_keeps_prefix():
    t = jet_exp(Jet.variable(0.0, 6))
    cut = t.truncated(3)
    assert cut.order == 3
    assert np.allclose(cut.coeffs, t.coeffs[:4])

"""Numerical kernels: special functions, quadrature, jets, Laplace inversion."""

from .special import gamma_fn, gammaln_fn, erf_fn, erfc_fn, factorial
from .quadrature import QuadratureSpec, AccuracyError, integrate, gauss_laguerre
from .jets import (
    Jet,
    JetSingularityError,
    antiderivative_compose,
    jet_eval,
    jet_exp,
    jet_log,
)
from .laplace import inverse_laplace, inverse_laplace_cdf

__all__ = [
    "gamma_fn",
    "gammaln_fn",
    "erf_fn",
    "erfc_fn",
    "factorial",
    "QuadratureSpec",
    "AccuracyError",
    "integrate",
    "gauss_laguerre",
    "Jet",
    "JetSingularityError",
    "jet_eval",
    "jet_exp",
    "jet_log",
    "antiderivative_compose",
    "inverse_laplace",
    "inverse_laplace_cdf",
]

"""Gamma and error functions in plain double precision.

The gamma function uses the Lanczos approximation (g = 7, 9 coefficients),
good to ~1e-14 relative error on the positive axis.  erf uses the Maclaurin
series for small arguments and the classical continued fraction for erfc
elsewhere, evaluated with the modified Lentz scheme.
"""

import math

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


def _lanczos_sum(x):
    # x is the shifted argument (original minus 1)
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    return acc


def gamma_fn(x):
    """Gamma(x) for real x > 0."""
    if not x > 0.0:
        raise ValueError(f"gamma_fn requires x > 0, got {x!r}")
    if x < 0.5:
        # reflection keeps the Lanczos argument away from the pole
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * t ** (z + 0.5) * math.exp(-t) * _lanczos_sum(z)


def gammaln_fn(x):
    """log Gamma(x) for real x > 0, stable for large x where gamma_fn overflows."""
    if not x > 0.0:
        raise ValueError(f"gammaln_fn requires x > 0, got {x!r}")
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - gammaln_fn(1.0 - x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def factorial(n):
    """n! for integer n >= 0."""
    if n < 0 or n != int(n):
        raise ValueError(f"factorial requires a nonnegative integer, got {n!r}")
    return math.factorial(int(n))


def _erf_series(z):
    # Maclaurin series, adequate up to z ~ 2 (mild alternation loss only)
    z2 = z * z
    term = z
    total = z
    n = 0
    while True:
        n += 1
        term *= -z2 / n
        delta = term / (2 * n + 1)
        total += delta
        if abs(delta) < 1e-17 * abs(total) + 1e-300:
            break
        if n > 200:  # unreachable for z <= 2
            break
    return _TWO_OVER_SQRT_PI * total


def _erfc_cf(z):
    # erfc(z) = Q(1/2, z^2); continued fraction for the regularized upper
    # incomplete gamma, modified Lentz scheme.  Converges fast for z >= 2.
    a = 0.5
    x = z * z
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 300):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if d == 0.0:
            d = tiny
        c = b + an / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    # prefactor exp(-x + a ln x - lnGamma(a)) = z exp(-z^2)/sqrt(pi)
    return z * math.exp(-x) / math.sqrt(math.pi) * h


def erf_fn(z):
    """erf(z); odd in z, absolute accuracy ~1e-15."""
    if z < 0.0:
        return -erf_fn(-z)
    if z < 2.0:
        return _erf_series(z)
    if z > 6.5:
        return 1.0
    return 1.0 - _erfc_cf(z)


def erfc_fn(z):
    """erfc(z) = 1 - erf(z), accurate in the far tail via the continued fraction."""
    if z < 0.0:
        return 2.0 - erfc_fn(-z)
    if z < 2.0:
        return 1.0 - _erf_series(z)
    if z > 26.0:
        return 0.0
    return _erfc_cf(z)

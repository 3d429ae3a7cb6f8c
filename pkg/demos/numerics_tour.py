"""Tour the numerical kernels the coverage expressions are built on.

Four pieces carry the analytic route: special functions (gamma, erf),
adaptive Gauss-Kronrod/Gauss-Laguerre quadrature, truncated-Taylor jets for
high-order derivatives, and Talbot-contour inverse Laplace transforms.
Each is exercised against an identity with a known value, then the bundled
cross-check suite is run end to end.
"""

import math

from uavcov.numerics import (
    Jet,
    erf_fn,
    gamma_fn,
    gauss_laguerre,
    integrate,
    inverse_laplace,
    jet_exp,
)
from uavcov.validation import finite_difference, run_suite

print("special functions:")
print(f"  gamma(4.5) = {gamma_fn(4.5):.15f} (exact 11.631728396567448...)")
print(f"  erf(1)     = {erf_fn(1.0):.15f} (exact 0.842700792949715...)")
print()

print("adaptive quadrature:")
val = integrate(lambda x: 4.0 / (1.0 + x * x), 0.0, 1.0)
print(f"  4/(1+x^2) on [0,1]  -> {val:.15f} (pi)")
val = integrate(lambda x: x**3 * math.e ** -x, 0.0, math.inf)
print(f"  x^3 e^-x on [0,inf) -> {val:.15f} (Gamma(4) = 6)")
nodes, weights = gauss_laguerre(8)
val = float(sum(w * n**3 for n, w in zip(nodes, weights)))
print(f"  8-node Gauss-Laguerre, same integrand -> {val:.15f}")
print()

print("jets (truncated Taylor arithmetic):")
x0 = 0.7
jet = jet_exp(Jet.variable(x0, order=6) ** 2)
d3_jet = jet.derivative_coefficient(3)
d3_fd = finite_difference(lambda x: math.exp(x * x), x0, 3)
print(f"  d^3/dx^3 exp(x^2) at {x0}: jet {d3_jet:.10f}, "
      f"finite difference {d3_fd:.10f}")
print()

print("inverse Laplace (Talbot contour):")
for t in (0.5, 2.0):
    val = inverse_laplace(lambda s: 1.0 / (s * (s + 1.0)), t)
    print(f"  L^-1[1/(s(s+1))]({t}) = {val:.12f} "
          f"(exact {1.0 - math.exp(-t):.12f})")
print()

report = run_suite("numerics")
print(f"bundled numerics suite: {report['n_checks'] - report['n_failed']}/"
      f"{report['n_checks']} checks passed")
for check in report["checks"]:
    if not check["passed"]:
        print(f"  FAIL {check['name']}: {check['detail']}")

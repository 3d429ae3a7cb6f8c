"""Show that coverage barely depends on the elevation-angle distribution.

Replacing the deterministic elevation angle by a random one whose tangent
is gamma-distributed (same mean tangent) moves downlink coverage by less
than a few parts in 1e5 across the practical angle range.  Only the mean
matters; the spread of the marks washes out of the coverage integral.
"""

import math

from uavcov.analytic import downlink_coverage, effective_density_factor
from uavcov.model import ConstantElevation, GammaTanElevation, NetworkParams

params = NetworkParams(density=1e-7, n_antennas=4)

print(f"density {params.density:g} /m^2, {params.n_antennas} antennas")
print()
print(" theta   constant    gamma(a=3)  |gap|      omega_const omega_gamma")
worst = 0.0
for theta_deg in (10.0, 20.0, 30.0, 40.0):
    theta = math.radians(theta_deg)
    const = ConstantElevation(theta)
    gamma = GammaTanElevation(3.0, theta)
    p_c = downlink_coverage(params, const).value
    p_g = downlink_coverage(params, gamma).value
    w_c = effective_density_factor(params, const)
    w_g = effective_density_factor(params, gamma)
    worst = max(worst, abs(p_c - p_g))
    print(f"  {theta_deg:4.0f}   {p_c:.6f}   {p_g:.6f}   {abs(p_c - p_g):.1e}"
          f"    {w_c:.5f}     {w_g:.5f}")

print()
print(f"largest coverage gap: {worst:.2e}")
print()

# the shape parameter controls mark spread around the same mean tangent;
# even an exponential spread (a = 1) barely registers
theta = math.radians(20.0)
base = downlink_coverage(params, ConstantElevation(theta)).value
print("spread sensitivity at 20 deg (a -> infinity recovers the constant):")
for a in (1.0, 3.0, 10.0, 100.0):
    p = downlink_coverage(params, GammaTanElevation(a, theta)).value
    print(f"  shape a = {a:6.1f}: coverage {p:.6f} (gap {abs(p - base):.1e})")

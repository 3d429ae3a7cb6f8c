"""Monte Carlo estimators: reference-path algebra, truncation control,
seeding, and statistical consistency with the analytic route."""

import math

import numpy as np
import pytest
from scipy.stats import kstest

import uavcov.montecarlo as mc
from uavcov.analytic import (
    downlink_coverage,
    nearest_sq_rate,
    peak_gain_cdf,
    tail_gain_moment,
    effective_density_factor,
)
from uavcov.model import (
    ConstantElevation,
    GammaTanElevation,
    NetworkParams,
    NetworkRealization,
    realize_network,
)
from uavcov.montecarlo import (
    CoverageEstimate,
    EmptyRealizationError,
    FadingDraw,
    associate,
    estimate_cellfree,
    estimate_downlink,
    guard_radius,
    interference_tail_mean,
    sample_nearest_sq,
    sample_peak_gain,
    sinr,
)

E25 = ConstantElevation(math.radians(25.0))


def _make_realization(x, y, theta, los):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    theta = np.asarray(theta, dtype=float)
    los = np.asarray(los, dtype=bool)
    alt = np.hypot(x, y) * np.tan(theta)
    return NetworkRealization(
        x=x, y=y, theta=theta, altitude=alt, los=los, sim_radius=1e4, seed=0
    )


# -- association and SINR -------------------------------------------------------


def test_associate_prefers_strong_attenuated_gain():
    # LoS at 100 m beats NLoS at 80 m once ell = 0.25 is applied:
    # 100^-2.75 = 3.16e-6 > 0.25 * 80^-2.75 = 1.46e-6
    real = _make_realization([100.0, 80.0], [0.0, 0.0], [0.0, 0.0], [True, False])
    assert associate(real, 2.75, 0.25) == 0
    # without attenuation the closer UAV wins
    assert associate(real, 2.75, 1.0) == 1


def test_associate_tie_takes_lowest_index():
    real = _make_realization([50.0, 50.0], [0.0, 0.0], [0.0, 0.0], [True, True])
    assert associate(real, 2.75, 0.25) == 0


def test_associate_empty_raises():
    real = _make_realization([], [], [], [])
    with pytest.raises(EmptyRealizationError):
        associate(real, 2.75, 0.25)


def test_sinr_single_uav_closed_form():
    p = NetworkParams(density=1e-6)
    real = _make_realization([200.0], [0.0], [math.radians(30.0)], [True])
    fading = FadingDraw(serving_gain=1.7, interferer_gains=np.array([0.9]))
    d3 = 200.0 / math.cos(math.radians(30.0))
    want = p.power * 1.7 * d3**-p.alpha / p.noise
    assert sinr(real, fading, 0, p) == pytest.approx(want, rel=1e-12)


def test_sinr_excludes_serving_gain_from_interference():
    p = NetworkParams(density=1e-6, noise=0.0)
    real = _make_realization(
        [100.0, 300.0], [0.0, 0.0], [0.0, 0.0], [True, True]
    )
    fading = FadingDraw(serving_gain=2.0, interferer_gains=np.array([5.0, 0.5]))
    # serving index 0: its own exp(1) draw (5.0) must not appear anywhere
    want = (2.0 * 100.0**-p.alpha) / (0.5 * 300.0**-p.alpha)
    assert sinr(real, fading, 0, p) == pytest.approx(want, rel=1e-12)


def test_sinr_validates_inputs():
    p = NetworkParams(density=1e-6)
    real = _make_realization([100.0], [0.0], [0.0], [True])
    fading = FadingDraw(serving_gain=1.0, interferer_gains=np.array([1.0]))
    with pytest.raises(IndexError):
        sinr(real, fading, 3, p)
    with pytest.raises(ValueError):
        sinr(real, FadingDraw(1.0, np.array([1.0, 2.0])), 0, p)


def test_identical_pair_interference_limited_half_coverage():
    # two co-located UAVs, no noise, N=1: SINR = Exp(1)/Exp(1), P[>= 1] = 1/2
    p = NetworkParams(density=1e-6, noise=0.0, beta=1.0)
    real = _make_realization([120.0, 120.0], [0.0, 0.0], [0.3, 0.3], [True, True])
    rng = np.random.default_rng(2024)
    n = 4000
    hits = 0
    for _ in range(n):
        fading = FadingDraw.sample(rng, 2, 1)
        hits += sinr(real, fading, 0, p) >= 1.0
    assert abs(hits / n - 0.5) <= 4.0 * math.sqrt(0.25 / n)


# -- truncation control ----------------------------------------------------------


def test_guard_radius_floor_engages_for_loose_tolerance():
    p = NetworkParams(density=1e-4)
    floor = 10.0 / math.sqrt(math.pi * p.density)
    assert guard_radius(p, E25, 0.1) == pytest.approx(floor, rel=1e-12)


def test_guard_radius_tightens_with_tolerance():
    p = NetworkParams(density=1e-7)
    r3 = guard_radius(p, E25, 1e-3)
    r4 = guard_radius(p, E25, 1e-4)
    assert r4 > r3
    # R grows like tolerance^(-1/(alpha-1))
    assert r4 / r3 == pytest.approx(10.0 ** (1.0 / (p.alpha - 1.0)), rel=1e-9)


def test_guard_radius_meets_its_own_contract():
    p = NetworkParams(density=1e-7)
    tol = 1e-3
    radius = guard_radius(p, E25, tol)
    mu = math.pi * p.density * effective_density_factor(p, E25)
    reference = 2.0 * mu ** (p.alpha / 2.0) / (p.alpha - 2.0)
    m2 = tail_gain_moment(p, E25, 2)
    tail_sd = math.sqrt(
        4.0 * math.pi * p.density * m2 / (2.0 * p.alpha - 2.0)
    ) * radius ** (1.0 - p.alpha)
    assert tail_sd <= tol * reference * (1.0 + 1e-12)


def test_tail_mean_matches_brute_force_annulus():
    # Campbell formula vs direct sampling of the far field
    p = NetworkParams(density=1e-6)
    r_in, r_out = 5e3, 2e5
    want = interference_tail_mean(p, E25, r_in) - interference_tail_mean(p, E25, r_out)
    rng = np.random.default_rng(55)
    area = math.pi * (r_out**2 - r_in**2)
    reps = 60
    masses = np.empty(reps)
    sec = 1.0 / math.cos(E25.theta_bar)
    from uavcov.model import los_probability

    p_los = los_probability(E25.theta_bar, p.c1, p.c2)
    for i in range(reps):
        n = rng.poisson(p.density * area)
        rr = np.sqrt(rng.random(n) * (r_out**2 - r_in**2) + r_in**2)
        d3 = rr * sec
        ell_f = np.where(rng.random(n) < p_los, 1.0, p.ell)
        masses[i] = float(np.sum(ell_f * d3**-p.alpha))
    se = masses.std(ddof=1) / math.sqrt(reps)
    assert abs(masses.mean() - want) <= 5.0 * se


def test_tail_mean_decreasing_in_radius():
    p = NetworkParams(density=1e-6)
    radii = [2e3, 1e4, 1e5]
    vals = [interference_tail_mean(p, E25, r) for r in radii]
    assert vals[0] > vals[1] > vals[2] > 0.0


# -- estimator behavior -----------------------------------------------------------


def test_estimates_are_bit_reproducible():
    p = NetworkParams(density=1e-6)
    a = estimate_downlink(p, E25, 3000, 77)
    b = estimate_downlink(p, E25, 3000, 77)
    assert a == b
    c = estimate_downlink(p, E25, 3000, 78)
    assert c.mean != a.mean or c.seed != a.seed


def test_estimate_matches_analytic_downlink():
    p = NetworkParams(density=1e-6)
    want = downlink_coverage(p, E25).value
    est = estimate_downlink(p, E25, 40000, 5150)
    assert abs(est.mean - want) <= 4.0 * est.std_error


def test_estimate_matches_analytic_gamma_tan():
    p = NetworkParams(density=1e-7, n_antennas=4)
    elev = GammaTanElevation(3.0, math.radians(20.0))
    want = downlink_coverage(p, elev).value
    est = estimate_downlink(p, elev, 20000, 60)
    assert abs(est.mean - want) <= 4.0 * max(est.std_error, 1e-4)


def test_estimate_stable_under_doubled_radius():
    p = NetworkParams(density=1e-6)
    r = guard_radius(p, E25, 1e-3)
    a = estimate_downlink(p, E25, 30000, 91, sim_radius=r)
    b = estimate_downlink(p, E25, 30000, 92, sim_radius=2.0 * r)
    joint = math.hypot(a.std_error, b.std_error)
    assert abs(a.mean - b.mean) <= 4.0 * joint


def test_estimate_stable_under_different_chunking(monkeypatch):
    p = NetworkParams(density=1e-6)
    want = downlink_coverage(p, E25).value
    monkeypatch.setattr(mc, "_POINTS_PER_CHUNK", 100_000)
    est = estimate_downlink(p, E25, 20000, 4242)
    assert abs(est.mean - want) <= 4.0 * est.std_error


def test_reported_stderr_matches_empirical_spread():
    p = NetworkParams(density=1e-6)
    reps, n = 25, 2000
    radius = 5000.0  # fixed small disk: bias is irrelevant to spread checks
    means = np.array(
        [estimate_downlink(p, E25, n, 1000 + i, sim_radius=radius).mean
         for i in range(reps)]
    )
    reported = estimate_downlink(p, E25, n, 1, sim_radius=radius).std_error
    ratio = means.std(ddof=1) / reported
    assert 0.6 <= ratio <= 1.5


def test_error_scales_with_inverse_sqrt_samples():
    p = NetworkParams(density=1e-6)
    radius = 5000.0
    reps = 30
    lo = np.array(
        [estimate_downlink(p, E25, 500, 3000 + i, sim_radius=radius).mean
         for i in range(reps)]
    )
    hi = np.array(
        [estimate_downlink(p, E25, 8000, 4000 + i, sim_radius=radius).mean
         for i in range(reps)]
    )
    slope = math.log(hi.std(ddof=1) / lo.std(ddof=1)) / math.log(8000 / 500)
    assert slope == pytest.approx(-0.5, abs=0.2)


def test_cellfree_estimator_saturated_regime():
    p = NetworkParams(density=1e-6)
    est = estimate_cellfree(p, E25, 2000, 8)
    assert est.mean == 1.0


def test_cellfree_requires_noise():
    p = NetworkParams(density=1e-6, noise=0.0)
    with pytest.raises(ValueError):
        estimate_cellfree(p, E25, 100, 1)


def test_estimators_validate_sample_count():
    p = NetworkParams(density=1e-6)
    with pytest.raises(ValueError):
        estimate_downlink(p, E25, 0, 1)


# -- distribution sampling ---------------------------------------------------------


def test_peak_gain_samples_follow_cdf():
    p = NetworkParams(density=1e-6)
    xs = sample_peak_gain(p, E25, 5000, 123)
    assert kstest(xs, lambda r: peak_gain_cdf(r, p, E25)).pvalue > 0.01


def test_nearest_sq_samples_follow_exponential_laws():
    p = NetworkParams(density=1e-6)
    for i, case in enumerate(("all-los-unit", "los-weighted", "pure-los")):
        xs = sample_nearest_sq(p, E25, case, 5000, 200 + i)
        rate = nearest_sq_rate(p, E25, case)
        assert kstest(xs, "expon", args=(0.0, 1.0 / rate)).pvalue > 0.01, case


def test_nearest_sq_rejects_unknown_case():
    p = NetworkParams(density=1e-6)
    with pytest.raises(ValueError):
        sample_nearest_sq(p, E25, "nearest", 100, 1)


def test_coverage_estimate_fields():
    est = CoverageEstimate(mean=0.25, std_error=0.01, n_samples=1000, seed=9)
    assert est.mean == 0.25 and est.n_samples == 1000

"""Monte Carlo coverage estimation.

Realizations are simulated inside a finite disk; the interference the disk
cannot see is not ignored but compensated: the closed-form far-field mean
(Campbell's formula over the region beyond the guard radius) is added to
every interference sum.  guard_radius then only has to control the
*fluctuation* of the missing tail, which shrinks like R^(1-alpha), so disks
stay small enough to simulate quickly even for alpha near 2.

Determinism: every estimator derives all randomness from
numpy.random.SeedSequence(master_seed) split into fixed-size chunks, so a
given (params, elevation, n_samples, master_seed) is bit-reproducible
regardless of host or worker count.  Chunks are sized by a fixed target of
points per batch, a pure function of the inputs.
"""

import math
from dataclasses import dataclass

import numpy as np

from .analytic import (
    effective_density_factor,
    nearest_sq_rate,
    tail_gain_moment,
)
from .model import ConstantElevation, InvalidParameterError, los_probability

_POINTS_PER_CHUNK = 2_000_000  # batching target; fixed so chunking is reproducible
_MIN_RADIUS_FACTOR = 10.0      # floor: R >= 10 / sqrt(pi * density)


class EmptyRealizationError(ValueError):
    """Association was asked for a realization with no UAVs."""


@dataclass(frozen=True)
class FadingDraw:
    """Per-realization fading: Gamma(N,1) toward the server, Exp(1) elsewhere.

    interferer_gains is aligned with the realization's point order; the
    entry at the serving index is ignored.
    """

    serving_gain: float
    interferer_gains: np.ndarray

    @classmethod
    def sample(cls, rng, n_points, n_antennas):
        return cls(
            serving_gain=float(rng.standard_gamma(n_antennas)),
            interferer_gains=rng.standard_exponential(n_points),
        )


@dataclass(frozen=True)
class CoverageEstimate:
    """Bernoulli mean with its exact binomial standard error."""

    mean: float
    std_error: float
    n_samples: int
    seed: int


# -- truncation control -------------------------------------------------------


def interference_tail_mean(params, elev, radius, quad=None):
    """Mean path-gain mass (units of L ||U||^-alpha) beyond the guard disk.

    Campbell: 2 pi density E[L cos^alpha(Theta)] R^(2-alpha) / (alpha - 2);
    multiply by power and a mean fading gain to get mW.  Added to simulated
    interference sums so truncation is bias-free in the mean.
    """
    m1 = tail_gain_moment(params, elev, 1, quad)
    return (
        2.0
        * math.pi
        * params.density
        * m1
        * radius ** (2.0 - params.alpha)
        / (params.alpha - 2.0)
    )


def guard_radius(params, elev, tolerance, quad=None):
    """Radius at which the missing far-field fluctuation is negligible.

    Returns the smallest R such that the standard deviation of the
    uncompensated tail (Exp(1) gains, E[G^2] = 2) is at most tolerance times
    a reference interference level -- the conditional mean interference at
    the mean association distance, 2 (pi density w_eff)^(alpha/2) power /
    (alpha - 2) -- floored at 10/sqrt(pi density) so a handful of points
    always exists.
    """
    if not tolerance > 0.0:
        raise InvalidParameterError(f"tolerance must be positive, got {tolerance!r}")
    mu = math.pi * params.density * effective_density_factor(params, elev, quad)
    reference = 2.0 * mu ** (params.alpha / 2.0) / (params.alpha - 2.0)
    m2 = tail_gain_moment(params, elev, 2, quad)
    coeff = math.sqrt(
        4.0 * math.pi * params.density * m2 / (2.0 * params.alpha - 2.0)
    )
    r_fluct = (coeff / (tolerance * reference)) ** (1.0 / (params.alpha - 1.0))
    r_floor = _MIN_RADIUS_FACTOR / math.sqrt(math.pi * params.density)
    return max(r_fluct, r_floor)


# -- single-realization reference path ----------------------------------------


def associate(realization, alpha, ell):
    """Index of the serving UAV: argmax of L ||U||^-alpha, ties to the lowest index."""
    n = len(realization)
    if n == 0:
        raise EmptyRealizationError("no UAV available for association")
    d3 = realization.distance_3d
    gain = d3 ** (-alpha) * np.where(realization.los, 1.0, ell)
    return int(np.argmax(gain))


def sinr(realization, fading, serving, params):
    """SINR of the typical user given a realization and one fading draw."""
    n = len(realization)
    if not 0 <= serving < n:
        raise IndexError(f"serving index {serving} out of range for {n} UAVs")
    if fading.interferer_gains.shape != (n,):
        raise ValueError(
            f"fading arrays must align with the realization: expected ({n},), "
            f"got {fading.interferer_gains.shape}"
        )
    d3 = realization.distance_3d
    gain = d3 ** (-params.alpha) * np.where(realization.los, 1.0, params.ell)
    signal = params.power * fading.serving_gain * gain[serving]
    interference = params.power * (
        float(fading.interferer_gains @ gain)
        - fading.interferer_gains[serving] * gain[serving]
    )
    return signal / (interference + params.noise)


# -- batched sampling ----------------------------------------------------------


def _chunk_sizes(n_samples, mean_points):
    per = max(64, min(int(_POINTS_PER_CHUNK / max(mean_points, 1.0)), 65536))
    sizes = [per] * (n_samples // per)
    if n_samples % per:
        sizes.append(n_samples % per)
    return sizes


def _draw_chunk(params, elev, radius, n, rng):
    """One batch of n realizations, flattened.

    Draw order is fixed (counts, radii, elevation tangents, LoS uniforms)
    so results are reproducible from the chunk's rng alone.  Returns
    (nz, cnz, starts, xi, d3, los): nonzero mask over realizations, point
    counts, segment starts, attenuated gains L ||U||^-alpha, 3D distances,
    LoS marks.
    """
    lam_area = params.density * math.pi * radius * radius
    counts = rng.poisson(lam_area, size=n)
    total = int(counts.sum())
    r = radius * np.sqrt(rng.random(total))
    if isinstance(elev, ConstantElevation):
        # scalar secant and LoS probability; worth it, this is the hot path
        d3 = r * (1.0 / math.cos(elev.theta_bar))
        p_los = los_probability(elev.theta_bar, params.c1, params.c2)
        los = rng.random(total) < p_los
    else:
        theta = np.asarray(elev.sample(rng, total), dtype=float)
        d3 = r / np.cos(theta)
        los = rng.random(total) < los_probability(theta, params.c1, params.c2)
    xi = d3 ** (-params.alpha)
    if params.ell != 1.0:
        xi = xi * np.where(los, 1.0, params.ell)
    nz = counts > 0
    cnz = counts[nz]
    starts = np.zeros(cnz.size, dtype=np.int64)
    if cnz.size > 1:
        starts[1:] = np.cumsum(cnz)[:-1]
    return nz, cnz, starts, xi, d3, los


def _downlink_chunk(params, elev, radius, tail_units, n, rng):
    nz, cnz, starts, xi, _, _ = _draw_chunk(params, elev, radius, n, rng)
    covered = np.zeros(n, dtype=bool)
    if cnz.size == 0:
        return covered
    seg = np.repeat(np.arange(cnz.size), cnz)
    xi_max = np.maximum.reduceat(xi, starts)
    idx = np.arange(xi.size, dtype=np.int64)
    cand = np.where(xi == xi_max[seg], idx, xi.size)
    i_star = np.minimum.reduceat(cand, starts)
    g = rng.standard_exponential(xi.size)
    s_all = np.add.reduceat(xi * g, starts)
    interference = s_all - g[i_star] * xi[i_star] + tail_units
    g_star = rng.standard_gamma(params.n_antennas, size=cnz.size)
    noise_units = params.noise / params.power
    covered[nz] = g_star * xi_max >= params.beta * (interference + noise_units)
    return covered


def _cellfree_chunk(params, elev, radius, tail_units, n, rng):
    nz, cnz, starts, xi, _, _ = _draw_chunk(params, elev, radius, n, rng)
    g = rng.standard_gamma(params.n_antennas, size=xi.size)
    threshold = params.beta * params.noise / params.power
    compensation = params.n_antennas * tail_units
    covered = np.full(n, compensation >= threshold, dtype=bool)
    if cnz.size:
        s = np.add.reduceat(xi * g, starts)
        covered[nz] = s + compensation >= threshold
    return covered


def _run_chunks(chunk_fn, params, elev, radius, tail_units, n_samples, master_seed):
    mean_points = params.density * math.pi * radius * radius
    sizes = _chunk_sizes(n_samples, mean_points)
    children = np.random.SeedSequence(int(master_seed)).spawn(len(sizes))
    hits = 0
    for size, child in zip(sizes, children):
        rng = np.random.default_rng(child)
        hits += int(chunk_fn(params, elev, radius, tail_units, size, rng).sum())
    mean = hits / n_samples
    return CoverageEstimate(
        mean=mean,
        std_error=math.sqrt(mean * (1.0 - mean) / n_samples),
        n_samples=n_samples,
        seed=int(master_seed),
    )


def estimate_downlink(
    params, elev, n_samples, master_seed, sim_radius=None, guard_tolerance=1e-3
):
    """Monte Carlo downlink coverage (strongest-UAV association).

    sim_radius defaults to guard_radius(params, elev, guard_tolerance); the
    far-field mean is always added back to the interference.
    """
    n_samples = int(n_samples)
    if n_samples < 1:
        raise InvalidParameterError("n_samples must be >= 1")
    radius = sim_radius if sim_radius is not None else guard_radius(params, elev, guard_tolerance)
    tail_units = interference_tail_mean(params, elev, radius)
    return _run_chunks(
        _downlink_chunk, params, elev, radius, tail_units, n_samples, master_seed
    )


def estimate_cellfree(
    params, elev, n_samples, master_seed, sim_radius=None, guard_tolerance=1e-3
):
    """Monte Carlo cell-free coverage (all UAVs transmit; SNR of the sum)."""
    if params.noise <= 0.0:
        raise InvalidParameterError("cell-free estimation requires noise > 0")
    n_samples = int(n_samples)
    if n_samples < 1:
        raise InvalidParameterError("n_samples must be >= 1")
    radius = sim_radius if sim_radius is not None else guard_radius(params, elev, guard_tolerance)
    tail_units = interference_tail_mean(params, elev, radius)
    return _run_chunks(
        _cellfree_chunk, params, elev, radius, tail_units, n_samples, master_seed
    )


# -- distribution sampling (for statistical tests) -----------------------------


def _law_radius(params, rate_constant):
    # disk large enough that the relevant extreme lies inside w.p. 1 - ~e^-30
    return math.sqrt(30.0 / max(rate_constant * math.pi * params.density, 1e-300))


def sample_peak_gain(params, elev, n_samples, master_seed, weight=None, sim_radius=None):
    """Per-realization maxima of W L ||U||^-alpha, for distribution tests.

    Realizations with no point inside the disk yield 0 (a gain smaller than
    any positive sample; probability ~e^-30 at the default radius).
    """
    n_samples = int(n_samples)
    if sim_radius is None:
        w_eff = effective_density_factor(params, elev)
        sim_radius = _law_radius(params, w_eff)
    sizes = _chunk_sizes(n_samples, params.density * math.pi * sim_radius**2)
    children = np.random.SeedSequence(int(master_seed)).spawn(len(sizes))
    out = []
    for size, child in zip(sizes, children):
        rng = np.random.default_rng(child)
        nz, cnz, starts, xi, _, _ = _draw_chunk(params, elev, sim_radius, size, rng)
        if weight is not None:
            xi = xi * weight.sample(rng, xi.size)
        vals = np.zeros(size)
        if cnz.size:
            vals[nz] = np.maximum.reduceat(xi, starts)
        out.append(vals)
    return np.concatenate(out)


def sample_nearest_sq(params, elev, case, n_samples, master_seed, sim_radius=None):
    """Per-realization squared nearest distances for the three planar laws.

    case meanings match nearest_sq_ccdf.  Realizations whose disk holds no
    qualifying point yield inf (probability ~e^-30 at the default radius).
    """
    n_samples = int(n_samples)
    rate_c = nearest_sq_rate(params, elev, case) / (math.pi * params.density)
    if sim_radius is None:
        sim_radius = _law_radius(params, rate_c)
    sizes = _chunk_sizes(n_samples, params.density * math.pi * sim_radius**2)
    children = np.random.SeedSequence(int(master_seed)).spawn(len(sizes))
    v = 2.0 / params.alpha
    out = []
    for size, child in zip(sizes, children):
        rng = np.random.default_rng(child)
        nz, cnz, starts, xi, d3, los = _draw_chunk(params, elev, sim_radius, size, rng)
        vals = np.full(size, np.inf)
        if cnz.size:
            if case == "los-weighted":
                # min (L^(-1/alpha) d3)^2 = (max xi)^(-2/alpha)
                vals[nz] = np.maximum.reduceat(xi, starts) ** (-v)
            elif case == "all-los-unit":
                vals[nz] = np.minimum.reduceat(d3, starts) ** 2
            else:  # pure-los
                d3_los = np.where(los, d3, np.inf)
                vals[nz] = np.minimum.reduceat(d3_los, starts) ** 2
        out.append(vals)
    return np.concatenate(out)

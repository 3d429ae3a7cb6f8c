"""Network model: UAVs as a marked planar Poisson process lifted into 3D.

Ground projections form a homogeneous Poisson process of the given density;
each UAV independently draws an elevation angle Theta seen from the typical
user at the origin, so its altitude is ||X|| tan(Theta) and its 3D distance
||X|| sec(Theta).  A Bernoulli line-of-sight mark with probability
rho(Theta) = 1/(1 + c2 exp(-c1 Theta)) selects the attenuation L in {1, ell}.

Angles are radians everywhere; powers are linear milliwatts.
"""

import math
from dataclasses import dataclass

import numpy as np

from .numerics.quadrature import QuadratureSpec, integrate
from .numerics.special import gammaln_fn

# LoS model constants for a suburban environment.
SUBURBAN_C1 = 24.5811
SUBURBAN_C2 = 39.5971


class InvalidParameterError(ValueError):
    """A model parameter is outside its valid range."""


@dataclass(frozen=True)
class NetworkParams:
    """Scenario parameters.

    density    UAV projections per square meter
    power      per-UAV transmit power, linear mW
    n_antennas transmit antennas per UAV (serving gain ~ Gamma(N, 1))
    noise      thermal noise power, linear mW
    alpha      path-loss exponent, > 2
    ell        NLoS attenuation factor in [0, 1]
    beta       SINR threshold, linear
    c1, c2     LoS probability constants
    """

    density: float
    power: float = 50.0
    n_antennas: int = 1
    noise: float = 10.0 ** -9.25
    alpha: float = 2.75
    ell: float = 0.25
    beta: float = 0.1
    c1: float = SUBURBAN_C1
    c2: float = SUBURBAN_C2

    def __post_init__(self):
        if not self.density > 0.0:
            raise InvalidParameterError(f"density must be positive, got {self.density!r}")
        if not self.power > 0.0:
            raise InvalidParameterError(f"power must be positive, got {self.power!r}")
        if int(self.n_antennas) != self.n_antennas or self.n_antennas < 1:
            raise InvalidParameterError(
                f"n_antennas must be an integer >= 1, got {self.n_antennas!r}"
            )
        if not self.noise >= 0.0:
            raise InvalidParameterError(f"noise must be >= 0, got {self.noise!r}")
        if not self.alpha > 2.0:
            raise InvalidParameterError(
                f"alpha must exceed 2 for finite interference, got {self.alpha!r}"
            )
        if not 0.0 <= self.ell <= 1.0:
            raise InvalidParameterError(f"ell must lie in [0, 1], got {self.ell!r}")
        if not self.beta > 0.0:
            raise InvalidParameterError(f"beta must be positive, got {self.beta!r}")
        if not (self.c1 > 0.0 and self.c2 > 0.0):
            raise InvalidParameterError("c1 and c2 must be positive")


def los_probability(theta, c1=SUBURBAN_C1, c2=SUBURBAN_C2):
    """P[line of sight | elevation angle theta], theta in radians in [0, pi/2]."""
    th = np.asarray(theta, dtype=float)
    if np.any(th < 0.0) or np.any(th > math.pi / 2):
        raise InvalidParameterError("elevation angle must lie in [0, pi/2] radians")
    out = 1.0 / (1.0 + c2 * np.exp(-c1 * th))
    return float(out) if np.isscalar(theta) else out


class ElevationModel:
    """Distribution of the elevation angle mark, independent of position."""

    def sample(self, rng, size=None):
        raise NotImplementedError

    def expect(self, fn, quad=None):
        """E[fn(Theta)] for a scalar function fn on [0, pi/2)."""
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantElevation(ElevationModel):
    """Every UAV sees the user under the same elevation angle."""

    theta_bar: float

    def __post_init__(self):
        if not 0.0 <= self.theta_bar < math.pi / 2:
            raise InvalidParameterError(
                f"theta_bar must lie in [0, pi/2) radians, got {self.theta_bar!r}"
            )

    def sample(self, rng, size=None):
        if size is None:
            return self.theta_bar
        return np.full(size, self.theta_bar)

    def expect(self, fn, quad=None):
        return float(fn(self.theta_bar))


@dataclass(frozen=True)
class GammaTanElevation(ElevationModel):
    """tan(Theta) ~ Gamma(shape, rate=shape/tan(theta_bar)).

    The rate choice keeps E[tan(Theta)] = tan(theta_bar) for every shape, so
    theta_bar acts as the nominal design angle while shape controls spread
    (shape -> inf degenerates to ConstantElevation).
    """

    shape: float
    theta_bar: float

    def __post_init__(self):
        if not self.shape > 0.0:
            raise InvalidParameterError(f"shape must be positive, got {self.shape!r}")
        if not 0.0 < self.theta_bar < math.pi / 2:
            raise InvalidParameterError(
                f"theta_bar must lie in (0, pi/2) radians, got {self.theta_bar!r}"
            )

    @property
    def rate(self):
        return self.shape / math.tan(self.theta_bar)

    def sample(self, rng, size=None):
        g = rng.gamma(self.shape, scale=1.0 / self.rate, size=size)
        return np.arctan(g)

    def expect(self, fn, quad=None):
        # E[fn(arctan(G/rate))] with G ~ Gamma(shape, 1); integrate against
        # the standardized density on a window holding all but ~1e-15 of mass
        a = self.shape
        rate = self.rate
        lognorm = gammaln_fn(a)
        spread = 12.0 * math.sqrt(a) + 35.0
        lo = max(0.0, a - spread)
        hi = a + spread

        def integrand(u):
            u = np.asarray(u, dtype=float)
            dens = np.exp((a - 1.0) * np.log(u) - u - lognorm)
            return fn(np.arctan(u / rate)) * dens

        return integrate(integrand, lo, hi, quad)


@dataclass(frozen=True)
class UavPoint:
    """One UAV: planar position, elevation mark, derived altitude, LoS flag."""

    x: float
    y: float
    theta: float
    altitude: float
    los: bool

    @property
    def horizontal_distance(self):
        return math.hypot(self.x, self.y)

    @property
    def distance_3d(self):
        return math.hypot(self.horizontal_distance, self.altitude)


@dataclass(frozen=True)
class NetworkRealization:
    """One sampled network inside a disk of sim_radius around the user.

    Stores flat arrays rather than objects; the `uavs` property materializes
    UavPoint views for small-scale inspection.
    """

    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    altitude: np.ndarray
    los: np.ndarray
    sim_radius: float
    seed: int

    def __len__(self):
        return self.x.size

    def __getitem__(self, i):
        return UavPoint(
            float(self.x[i]),
            float(self.y[i]),
            float(self.theta[i]),
            float(self.altitude[i]),
            bool(self.los[i]),
        )

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def uavs(self):
        return tuple(self)

    @property
    def horizontal_distance(self):
        return np.hypot(self.x, self.y)

    @property
    def distance_3d(self):
        # ||X|| sec(Theta); identical to hypot(||X||, altitude) up to rounding
        return self.horizontal_distance / np.cos(self.theta)


def sample_projections(density, sim_radius, rng):
    """Planar Poisson process inside a disk: returns an (n, 2) array."""
    if not density > 0.0 or not sim_radius > 0.0:
        raise InvalidParameterError("density and sim_radius must be positive")
    n = rng.poisson(density * math.pi * sim_radius**2)
    r = sim_radius * np.sqrt(rng.random(n))
    phi = rng.random(n) * (2.0 * math.pi)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi)])


def sample_elevation(model, rng, size=None):
    """Draw elevation angles from an ElevationModel."""
    return model.sample(rng, size)


def realize_network(params, elev, sim_radius, seed):
    """Sample one marked realization; the stored seed replays it bit-exactly."""
    seed = int(seed)
    rng = np.random.default_rng(seed)
    xy = sample_projections(params.density, sim_radius, rng)
    n = xy.shape[0]
    theta = np.asarray(elev.sample(rng, n), dtype=float)
    hd = np.hypot(xy[:, 0], xy[:, 1])
    altitude = hd * np.tan(theta)
    los = rng.random(n) < los_probability(theta, params.c1, params.c2)
    return NetworkRealization(
        x=xy[:, 0],
        y=xy[:, 1],
        theta=theta,
        altitude=altitude,
        los=los,
        sim_radius=float(sim_radius),
        seed=seed,
    )

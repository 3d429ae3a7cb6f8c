"""Coverage analysis for aerial base stations modeled as a marked PPP.

UAVs form a planar Poisson process with i.i.d. elevation-angle marks that
set each station's altitude; links are line-of-sight with an angle-dependent
probability, non-LoS links attenuated by a constant factor.  The package
computes downlink and cell-free coverage probabilities two independent ways,
by analytic expressions (truncated-series coefficient extraction plus
numerical inverse Laplace) and by vectorized Monte Carlo, so each route
validates the other.
"""

from .analytic import (
    CoverageResult,
    DensityWeight,
    FixedMomentWeight,
    UnitWeight,
    UNIT_WEIGHT,
    cellfree_coverage,
    cos2_moment,
    downlink_coverage,
    effective_density_factor,
    interference_integral,
    jensen_lower_bound,
    los_cos2_moment,
    nearest_sq_ccdf,
    nearest_sq_rate,
    peak_gain_cdf,
    tail_gain_moment,
    thinned_points,
)
from .config import ConfigError, RunConfig, SweepAxis, parse_config, render_config
from .model import (
    ConstantElevation,
    ElevationModel,
    GammaTanElevation,
    InvalidParameterError,
    NetworkParams,
    NetworkRealization,
    UavPoint,
    los_probability,
    realize_network,
)
from .montecarlo import (
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

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConstantElevation",
    "CoverageEstimate",
    "CoverageResult",
    "DensityWeight",
    "ElevationModel",
    "EmptyRealizationError",
    "FadingDraw",
    "FixedMomentWeight",
    "GammaTanElevation",
    "InvalidParameterError",
    "NetworkParams",
    "NetworkRealization",
    "RunConfig",
    "SweepAxis",
    "UavPoint",
    "UnitWeight",
    "UNIT_WEIGHT",
    "associate",
    "cellfree_coverage",
    "cos2_moment",
    "downlink_coverage",
    "effective_density_factor",
    "estimate_cellfree",
    "estimate_downlink",
    "guard_radius",
    "interference_integral",
    "interference_tail_mean",
    "jensen_lower_bound",
    "los_cos2_moment",
    "los_probability",
    "nearest_sq_ccdf",
    "nearest_sq_rate",
    "parse_config",
    "peak_gain_cdf",
    "realize_network",
    "render_config",
    "sample_nearest_sq",
    "sample_peak_gain",
    "sinr",
    "tail_gain_moment",
    "thinned_points",
]

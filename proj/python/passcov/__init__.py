"""Covert pinching-antenna downlink analysis.

Thin python surface over the C++ core: local detector error rates,
majority-fusion detectability, the closed piecewise form and its
threshold minimum, covert-rate quadrature, Monte-Carlo cross-checks,
and the covert-rate maximizer.
"""

from ._core import (  # noqa: F401
    DesignPoint,
    OptimizerConfig,
    OptimizerProblem,
    PasscovError,
    RadiationModel,
    RadiationSpec,
    SystemGeometry,
    WardenProfile,
    WardenSet,
    Waveguide,
    array_gain,
    avg_covert_rate,
    bob_rate,
    dep_exact,
    enum_fusion,
    esp,
    feasible_init,
    fractions,
    gauss_legendre,
    majority_threshold,
    make_profile,
    mc_system_dep,
    min_dep_threshold,
    optimize,
    p_fa,
    p_md,
    philox_u01,
    project_spacing,
    residual_power,
    vote_distribution,
    warden_profiles,
)

__all__ = [
    "DesignPoint",
    "OptimizerConfig",
    "OptimizerProblem",
    "PasscovError",
    "RadiationModel",
    "RadiationSpec",
    "SystemGeometry",
    "WardenProfile",
    "WardenSet",
    "Waveguide",
    "array_gain",
    "avg_covert_rate",
    "bob_rate",
    "dep_exact",
    "enum_fusion",
    "esp",
    "feasible_init",
    "fractions",
    "gauss_legendre",
    "majority_threshold",
    "make_profile",
    "mc_system_dep",
    "min_dep_threshold",
    "optimize",
    "p_fa",
    "p_md",
    "philox_u01",
    "project_spacing",
    "residual_power",
    "vote_distribution",
    "warden_profiles",
]

__version__ = "0.1.0"

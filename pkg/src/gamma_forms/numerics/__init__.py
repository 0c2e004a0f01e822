"""High-precision numerics: midpoint-radius values, 3F2, quadrature, constants."""

from .constants import gamma_reference, gamma_table_capacity, log_factored
from .hpvalue import HPValue, Rigor
from .hypergeometric import (
    HypergeometricParams,
    ThomaeResult,
    eval_3F2,
    gamma_ratio_poly,
    integrand_params,
    random_thomae_params,
    thomae_check,
)
from .quadrature import (
    BetaCheck,
    QuadratureError,
    beta_integral_check,
    integrate_interval,
    integrate_semi_infinite,
    integrate_unit_square,
)

__all__ = [
    "BetaCheck",
    "HPValue",
    "HypergeometricParams",
    "QuadratureError",
    "Rigor",
    "ThomaeResult",
    "beta_integral_check",
    "eval_3F2",
    "gamma_ratio_poly",
    "gamma_reference",
    "gamma_table_capacity",
    "integrate_interval",
    "integrate_semi_infinite",
    "integrate_unit_square",
    "log_factored",
    "integrand_params",
    "random_thomae_params",
    "thomae_check",
]
